#include "cmv/dissection.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cmv/errors.hpp"
#include "cmv/linalg.hpp"
#include "cmv/placing.hpp"
#include "cmv/random.hpp"

namespace cmv {

HalfOpenPolytope half_open_by_point(const Polytope& p, const Point& q) {
  if (p.is_empty()) throw GeometryError("half-open operator on the empty polytope");
  if (q.size() != p.ambient_dim()) throw GeometryError("point of wrong dimension");
  if (!p.in_affine_hull(q)) throw GeometryError("point " + to_string(q) + " is outside aff(P)");
  HalfOpenPolytope h{p, {}};
  const auto& fs = p.facets();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Rational v = dot(fs[i].normal, q);
    if (v == fs[i].offset) {
      throw NonGenericError("point " + to_string(q) + " lies on a facet hyperplane");
    }
    if (v > fs[i].offset) h.removed.push_back(i);
  }
  return h;
}

HalfOpenPolytope half_open_by_direction(const Polytope& p, const Point& u) {
  if (p.is_empty()) throw GeometryError("half-open operator on the empty polytope");
  if (u.size() != p.ambient_dim()) throw GeometryError("direction of wrong dimension");
  HalfOpenPolytope h{p, {}};
  if (p.dim() == 0) return h;
  for (const auto& e : p.equations()) {
    if (dot(e.normal, u) != 0) {
      throw GeometryError("direction " + to_string(u) + " is not parallel to aff(P)");
    }
  }
  const auto& fs = p.facets();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Rational v = dot(fs[i].normal, u);
    if (v == 0) throw NonGenericError("direction " + to_string(u) + " is parallel to a facet");
    if (v > 0) h.removed.push_back(i);
  }
  return h;
}

std::optional<Point> direction_matching_point(const Polytope& simplex, const Point& q) {
  if (!simplex.is_simplex() || simplex.dim() < 1) {
    throw GeometryError("direction_matching_point needs a simplex of positive dimension");
  }
  const auto target = half_open_by_point(simplex, q);
  if (target.removed.empty()) return std::nullopt;
  const auto& fs = simplex.facets();
  const Matrix& basis = simplex.directions();
  const std::size_t k = basis.size();
  const std::size_t m = fs.size();

  // Facet normals in direction-space coordinates and their positive dependency.
  Matrix coords(m, std::vector<Rational>(k));
  Matrix columns(k, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      coords[i][j] = dot(fs[i].normal, basis[j]);
      columns[j][i] = coords[i][j];
    }
  }
  const Matrix dep = null_space(columns, m);
  if (dep.size() != 1) return std::nullopt;
  std::vector<Rational> lambda = dep[0];
  if (lambda[0] < 0) {
    for (auto& l : lambda) l = -l;
  }

  std::vector<Rational> gap(m);
  Rational removed_mass = 0, kept_mass = 0;
  std::vector<bool> is_removed(m, false);
  for (auto i : target.removed) is_removed[i] = true;
  for (std::size_t i = 0; i < m; ++i) {
    gap[i] = dot(fs[i].normal, q) - fs[i].offset;
    (is_removed[i] ? removed_mass : kept_mass) += lambda[i] * gap[i];
  }
  // Keep the sign pattern of the gaps and rescale the kept ones so that the
  // prescribed values satisfy the dependency.
  const Rational scale = removed_mass / -kept_mass;
  std::vector<Rational> rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = is_removed[i] ? gap[i] : gap[i] * scale;
  auto y = particular_solution(coords, rhs, k);
  if (!y) return std::nullopt;
  Point u = zero_point(simplex.ambient_dim());
  for (std::size_t j = 0; j < k; ++j) u = u + scaled(basis[j], (*y)[j]);
  if (half_open_by_direction(simplex, u).removed != target.removed) return std::nullopt;
  return u;
}

std::vector<Point> split_point(const std::vector<Polytope>& summands, const Point& q) {
  if (summands.empty()) throw GeometryError("split_point needs at least one summand");
  const std::size_t d = q.size();
  Matrix dirs;
  std::vector<std::size_t> owner;
  Point rest = q;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (summands[i].ambient_dim() != d) throw GeometryError("summand of wrong dimension");
    rest = rest - summands[i].vertices()[0];
    for (const auto& row : summands[i].directions()) {
      dirs.push_back(row);
      owner.push_back(i);
    }
  }
  if (rank(dirs) != dirs.size()) throw GeometryError("the Minkowski sum is not exact");
  Matrix a(d, std::vector<Rational>(dirs.size()));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < dirs.size(); ++c) a[r][c] = dirs[c][r];
  }
  auto y = particular_solution(a, rest, dirs.size());
  if (!y) throw GeometryError("point " + to_string(q) + " is outside the affine hull of the sum");
  std::vector<Point> parts;
  for (const auto& s : summands) parts.push_back(s.vertices()[0]);
  for (std::size_t c = 0; c < dirs.size(); ++c) {
    parts[owner[c]] = parts[owner[c]] + scaled(dirs[c], (*y)[c]);
  }
  return parts;
}

HalfOpenPolytope HalfOpenRule::apply(const Polytope& p) const {
  return kind == Kind::point ? half_open_by_point(p, vector) : half_open_by_direction(p, vector);
}

std::string HalfOpenRule::describe() const {
  return (kind == Kind::point ? "point " : "direction ") + to_string(vector);
}

MixedCell MixedCell::from_summands(std::vector<Polytope> summands, std::size_t ambient_dim) {
  MixedCell c;
  c.cell = summands.empty() ? origin(ambient_dim)
           : summands.size() == 1 ? summands[0]
                                  : minkowski_sum(summands, ambient_dim);
  c.summands = std::move(summands);
  return c;
}

bool MixedCell::exact() const {
  int total = 0;
  for (const auto& s : summands) total += s.dim();
  return total == cell.dim();
}

std::size_t MixedCell::cylinder_order() const {
  return static_cast<std::size_t>(
      std::count_if(summands.begin(), summands.end(), [](const Polytope& s) { return s.dim() > 0; }));
}

void assign_half_open(Dissection& d, const HalfOpenRule& rule) {
  rule.apply(d.target);
  for (auto& c : d.cells) c.removed = rule.apply(c.cell).removed;
  d.rule = rule;
}

namespace {

struct Hyperplanes {
  std::vector<const Facet*> facets;

  explicit Hyperplanes(const Dissection& d) {
    for (const auto& f : d.target.facets()) facets.push_back(&f);
    for (const auto& c : d.cells) {
      for (const auto& f : c.cell.facets()) facets.push_back(&f);
    }
  }
};

Point barycenter(const Polytope& p) {
  Point c = zero_point(p.ambient_dim());
  for (const auto& v : p.vertices()) c = c + v;
  return scaled(c, Rational(1, static_cast<long>(p.vertices().size())));
}

Point random_combination(Rng& rng, const Matrix& basis, std::size_t d, std::int64_t range) {
  Point w = zero_point(d);
  for (const auto& row : basis) w = w + scaled(row, Rational(rng.uniform(-range, range)));
  return w;
}

bool is_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

Point generic_interior_point(const Dissection& d, std::uint64_t seed) {
  const Polytope& t = d.target;
  const Point c = barycenter(t);
  if (t.dim() == 0) return c;
  const Hyperplanes hp(d);
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Point w = random_combination(rng, t.directions(), t.ambient_dim(), 97);
    if (is_zero(w)) continue;
    Integer den = 1;
    for (int j = 0; j < 64; ++j) {
      den *= 2;
      const Point q = c + scaled(w, Rational(1) / Rational(den + 1));
      if (!t.in_relative_interior(q)) continue;
      bool generic = true;
      for (const auto* f : hp.facets) {
        if (dot(f->normal, q) == f->offset) {
          generic = false;
          break;
        }
      }
      if (generic) return q;
    }
  }
  throw NonGenericError("no generic interior point found");
}

Point generic_direction(const Dissection& d, std::uint64_t seed) {
  const Polytope& t = d.target;
  if (t.dim() == 0) return zero_point(t.ambient_dim());
  const Hyperplanes hp(d);
  Rng rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    const Point u = random_combination(rng, t.directions(), t.ambient_dim(), 4 * (attempt + 1));
    if (is_zero(u)) continue;
    if (std::none_of(hp.facets.begin(), hp.facets.end(),
                     [&](const Facet* f) { return dot(f->normal, u) == 0; })) {
      return u;
    }
  }
  throw NonGenericError("no generic direction found");
}

namespace {

const HalfOpenRule& rule_of(const Dissection& d) {
  if (!d.rule) throw std::logic_error("the dissection has no half-open rule");
  return *d.rule;
}

}  // namespace

CountCertificate count_certificate(const Dissection& d, Execution exec) {
  const auto& rule = rule_of(d);
  CountCertificate cert;
  for (const auto& c : d.cells) {
    cert.cell_counts.push_back(count_half_open_points(c.half_open(), exec));
    cert.total += cert.cell_counts.back();
  }
  cert.expected = count_half_open_points(rule.apply(d.target), exec);
  return cert;
}

PartitionCheck partition_check(const Dissection& d) {
  const auto& rule = rule_of(d);
  std::map<Point, std::size_t> cover;
  for (const auto& x : half_open_points(rule.apply(d.target))) cover[x] = 0;
  PartitionCheck check;
  check.points = cover.size();
  for (const auto& c : d.cells) {
    for (const auto& x : half_open_points(c.half_open())) {
      auto it = cover.find(x);
      if (it == cover.end()) {
        ++check.stray;
      } else {
        ++it->second;
      }
    }
  }
  for (const auto& [x, n] : cover) {
    if (n == 0) ++check.uncovered;
    if (n > 1) ++check.multiply_covered;
  }
  return check;
}

Rational chart_volume(const Polytope& target, const Polytope& cell) {
  if (cell.is_empty()) return Rational(0);
  const Matrix& basis = target.directions();
  if (basis.empty()) return Rational(1);
  std::vector<std::size_t> pivots;
  for (const auto& row : basis) {
    std::size_t j = 0;
    while (row[j] == 0) ++j;
    pivots.push_back(j);
  }
  std::vector<Point> projected;
  for (const auto& v : cell.vertices()) {
    Point y;
    for (auto j : pivots) y.push_back(v[j]);
    projected.push_back(std::move(y));
  }
  Polytope image = convex_hull(projected, LatticeTag::Q);
  return image.dim() == static_cast<int>(pivots.size()) ? image.volume() : Rational(0);
}

VolumeCertificate volume_certificate(const Dissection& d) {
  VolumeCertificate cert;
  cert.total = 0;
  for (const auto& c : d.cells) cert.total += chart_volume(d.target, c.cell);
  cert.expected = chart_volume(d.target, d.target);
  return cert;
}

Polytope order_simplex(std::size_t d, long n) {
  std::vector<Point> verts;
  for (std::size_t k = 0; k <= d; ++k) {
    Point v = zero_point(d);
    for (std::size_t j = d - k; j < d; ++j) v[j] = n;
    verts.push_back(std::move(v));
  }
  return convex_hull(verts);
}

Dissection boxcell_dissection(std::size_t d, long n) {
  if (d < 1 || n < 1) throw std::invalid_argument("boxcell_dissection needs d >= 1 and n >= 1");
  Dissection out;
  out.target = order_simplex(d, n);
  std::vector<long> b(d, 0);
  while (true) {
    std::vector<Polytope> summands;
    std::size_t start = 0;
    while (start < d) {
      std::size_t end = start;
      while (end + 1 < d && b[end + 1] == b[start]) ++end;
      // Order simplex on the block: vertices with the last t block
      // coordinates equal to one.
      std::vector<Point> verts;
      for (std::size_t t = 0; t <= end - start + 1; ++t) {
        Point v = zero_point(d);
        for (std::size_t j = end + 1 - t; j <= end; ++j) v[j] = 1;
        if (summands.empty()) {
          for (std::size_t j = 0; j < d; ++j) v[j] += b[j];
        }
        verts.push_back(std::move(v));
      }
      summands.push_back(convex_hull(verts));
      start = end + 1;
    }
    out.cells.push_back(MixedCell::from_summands(std::move(summands), d));

    // Next weakly increasing vector in {0..n-1}^d.
    std::size_t j = d;
    while (j > 0 && b[j - 1] == n - 1) --j;
    if (j == 0) break;
    const long v = b[j - 1] + 1;
    for (std::size_t k = j - 1; k < d; ++k) b[k] = v;
  }
  Point u(d);
  for (std::size_t j = 0; j < d; ++j) u[j] = static_cast<long>(j + 1);
  assign_half_open(out, {HalfOpenRule::Kind::direction, u});
  return out;
}

Dissection staircase_dissection(const Polytope& s1, const Polytope& s2) {
  if (!s1.is_simplex() || !s2.is_simplex()) throw GeometryError("staircase needs two simplices");
  if (s1.ambient_dim() != s2.ambient_dim()) throw GeometryError("ambient dimensions differ");
  const std::size_t d = s1.ambient_dim();
  Dissection out;
  out.target = minkowski_sum(s1, s2);
  const auto p = static_cast<std::size_t>(s1.dim());
  const auto q = static_cast<std::size_t>(s2.dim());
  if (static_cast<std::size_t>(out.target.dim()) != p + q) {
    throw GeometryError("staircase needs an exact sum");
  }
  const auto& a = s1.vertices();
  const auto& b = s2.vertices();
  // A path is a choice of which of the p + q steps advance along s1.
  std::vector<bool> steps(p + q, false);
  std::fill(steps.begin(), steps.begin() + static_cast<long>(p), true);
  do {
    std::vector<Point> verts{a[0] + b[0]};
    std::size_t i = 0, j = 0;
    for (bool right : steps) {
      right ? ++i : ++j;
      verts.push_back(a[i] + b[j]);
    }
    out.cells.push_back(MixedCell::from_summands({convex_hull(verts)}, d));
  } while (std::prev_permutation(steps.begin(), steps.end()));
  return out;
}

std::vector<MixedCell> chain_refinement(const MixedCell& c) {
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < c.summands.size(); ++i) {
    if (c.summands[i].dim() > 0) positive.push_back(i);
  }
  if (positive.size() < 2) return {c};
  const std::size_t i = positive[0], j = positive[1];
  const std::size_t d = c.cell.ambient_dim();
  std::vector<MixedCell> out;
  for (const auto& t : staircase_dissection(c.summands[i], c.summands[j]).cells) {
    std::vector<Polytope> summands;
    for (std::size_t k = 0; k < c.summands.size(); ++k) {
      if (k == i) {
        summands.push_back(t.cell);
      } else if (k != j) {
        summands.push_back(c.summands[k]);
      }
    }
    out.push_back(MixedCell::from_summands(std::move(summands), d));
  }
  return out;
}

Dissection placing_triangulation(const Polytope& p, const std::vector<Point>& order) {
  std::vector<Point> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != p.vertices()) throw GeometryError("the order must list every vertex exactly once");
  const auto t = place_points(order);
  Dissection out;
  out.target = p;
  for (const auto& cell : t.cells) {
    std::vector<Point> verts;
    for (auto idx : cell) verts.push_back(order[idx]);
    out.cells.push_back(MixedCell::from_summands({convex_hull(verts, p.lattice())}, p.ambient_dim()));
  }
  return out;
}

}  // namespace cmv
