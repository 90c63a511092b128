#include "cmv/lattice.hpp"

#include <algorithm>

#include "cmv/errors.hpp"

namespace cmv {

namespace {

kernels::IntegerRow integer_row(const std::vector<Rational>& normal) {
  kernels::IntegerRow row;
  row.a.reserve(normal.size());
  for (const auto& c : normal) {
    if (!is_integral(c)) throw std::logic_error("facet normal is not integral");
    row.a.push_back(to_int64(boost::multiprecision::numerator(c)));
  }
  return row;
}

std::vector<Point> to_points(const std::vector<kernels::IntPoint>& raw) {
  std::vector<Point> out;
  out.reserve(raw.size());
  for (const auto& x : raw) {
    Point p;
    p.reserve(x.size());
    for (auto c : x) p.emplace_back(c);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::size_t> all_facets(const Polytope& p) {
  std::vector<std::size_t> ids(p.facets().size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return ids;
}

std::vector<Point> collect(const Polytope& p, const std::vector<std::size_t>& strict,
                           Execution exec) {
  if (p.is_empty()) return {};
  const auto sys = integer_system(p, strict);
  return to_points(exec == Execution::reference ? kernels::collect_reference(sys)
                                                : kernels::collect_parallel(sys));
}

LatticeCount count(const Polytope& p, const std::vector<std::size_t>& strict, Execution exec) {
  if (p.is_empty()) return 0;
  const auto sys = integer_system(p, strict);
  return exec == Execution::reference ? kernels::count_reference(sys)
                                      : kernels::count_parallel(sys);
}

}  // namespace

bool HalfOpenPolytope::contains_point(const Point& x) const {
  if (!base.contains_point(x)) return false;
  const auto& fs = base.facets();
  for (auto i : removed) {
    if (dot(fs.at(i).normal, x) >= fs.at(i).offset) return false;
  }
  return true;
}

kernels::IntegerSystem integer_system(const Polytope& p, const std::vector<std::size_t>& strict) {
  if (p.is_empty()) throw GeometryError("integer_system of the empty polytope");
  kernels::IntegerSystem sys;
  sys.dim = p.ambient_dim();
  sys.lo.assign(sys.dim, 0);
  sys.hi.assign(sys.dim, 0);
  const auto& verts = p.vertices();
  for (std::size_t j = 0; j < sys.dim; ++j) {
    Rational mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    sys.lo[j] = to_int64(ceil_of(mn));
    sys.hi[j] = to_int64(floor_of(mx));
  }
  for (const auto& e : p.equations()) {
    if (!is_integral(e.value)) {
      sys.infeasible = true;
      continue;
    }
    auto row = integer_row(e.normal);
    row.bound = to_int64(boost::multiprecision::numerator(e.value));
    sys.equalities.push_back(std::move(row));
  }
  const auto& fs = p.facets();
  std::vector<bool> is_strict(fs.size(), false);
  for (auto i : strict) is_strict.at(i) = true;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto row = integer_row(fs[i].normal);
    // a.x is an integer on lattice points, so a.x <= b  <=>  a.x <= floor(b)
    // and a.x < b  <=>  a.x <= ceil(b) - 1.
    row.bound = to_int64(is_strict[i] ? ceil_of(fs[i].offset) - 1 : floor_of(fs[i].offset));
    sys.inequalities.push_back(std::move(row));
  }
  sys.check_range();
  return sys;
}

std::vector<Point> lattice_points(const Polytope& p, Execution exec) { return collect(p, {}, exec); }

LatticeCount count_lattice_points(const Polytope& p, Execution exec) { return count(p, {}, exec); }

std::vector<Point> half_open_points(const HalfOpenPolytope& h, Execution exec) {
  return collect(h.base, h.removed, exec);
}

LatticeCount count_half_open_points(const HalfOpenPolytope& h, Execution exec) {
  return count(h.base, h.removed, exec);
}

std::vector<Point> relint_points(const Polytope& p, Execution exec) {
  if (p.is_empty()) throw GeometryError("relint of the empty polytope is undefined");
  return collect(p, all_facets(p), exec);
}

LatticeCount count_relint_points(const Polytope& p, Execution exec) {
  if (p.is_empty()) throw GeometryError("relint of the empty polytope is undefined");
  return count(p, all_facets(p), exec);
}

Rational euler_relint_value(const std::function<Rational(const Polytope&)>& phi,
                            const Polytope& p) {
  if (p.is_empty()) throw GeometryError("relint of the empty polytope is undefined");
  const FaceLattice lattice = face_lattice(p);
  Rational total = 0;
  for (const auto& f : lattice.faces) {
    const Rational v = phi(f.polytope);
    if ((p.dim() - f.dim) % 2 == 0) {
      total += v;
    } else {
      total -= v;
    }
  }
  return total;
}

}  // namespace cmv
