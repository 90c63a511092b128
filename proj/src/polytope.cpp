#include "cmv/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cmv/errors.hpp"
#include "cmv/placing.hpp"

namespace cmv {

namespace {

std::vector<Rational> to_rational(const std::vector<Integer>& v) {
  return {v.begin(), v.end()};
}

void check_same_dim(const Polytope& p, const Polytope& q, const char* op) {
  if (p.is_empty() || q.is_empty()) throw GeometryError(std::string(op) + ": empty polytope");
  if (p.ambient_dim() != q.ambient_dim()) {
    throw GeometryError(std::string(op) + ": ambient dimension mismatch");
  }
}

// Candidates far from the centroid are inserted first so that interior
// points are rejected against an already large hull.
std::vector<Point> hull_insertion_order(std::span<const Point> input) {
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 4) return pts;
  const std::size_t d = pts[0].size();
  Point centroid = zero_point(d);
  for (const auto& p : pts) centroid = centroid + p;
  centroid = scaled(centroid, Rational(1, static_cast<long>(pts.size())));
  std::vector<std::pair<Rational, std::size_t>> keyed;
  keyed.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point diff = pts[i] - centroid;
    keyed.emplace_back(dot(diff, diff), i);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& [dist, i] : keyed) out.push_back(pts[i]);
  return out;
}

}  // namespace

Polytope Polytope::empty(std::size_t ambient_dim) {
  auto d = std::make_shared<Data>();
  d->ambient = ambient_dim;
  return Polytope(std::move(d));
}

const Polytope::Data& Polytope::data() const {
  if (is_empty()) throw GeometryError("operation on the empty polytope");
  return *data_;
}

bool Polytope::has_integral_vertices() const {
  if (is_empty()) return true;
  for (const auto& v : data_->vertices) {
    if (!is_integral(v)) return false;
  }
  return true;
}

const std::vector<Point>& Polytope::vertices() const {
  static const std::vector<Point> none;
  return data_ ? data_->vertices : none;
}
const std::vector<Facet>& Polytope::facets() const { return data().facets; }
const std::vector<AffineEquation>& Polytope::equations() const { return data().equations; }
const Matrix& Polytope::directions() const { return data().directions; }
const Rational& Polytope::volume() const { return data().volume; }

bool Polytope::in_affine_hull(const Point& x) const {
  if (x.size() != ambient_dim()) throw GeometryError("point of wrong dimension");
  for (const auto& e : data().equations) {
    if (dot(e.normal, x) != e.value) return false;
  }
  return true;
}

bool Polytope::contains_point(const Point& x) const {
  if (is_empty()) return false;
  if (!in_affine_hull(x)) return false;
  for (const auto& f : data_->facets) {
    if (dot(f.normal, x) > f.offset) return false;
  }
  return true;
}

bool Polytope::in_relative_interior(const Point& x) const {
  if (is_empty()) return false;
  if (!in_affine_hull(x)) return false;
  for (const auto& f : data_->facets) {
    if (dot(f.normal, x) >= f.offset) return false;
  }
  return true;
}

bool operator==(const Polytope& a, const Polytope& b) {
  if (a.is_empty() || b.is_empty()) {
    return a.is_empty() == b.is_empty() && a.ambient_dim() == b.ambient_dim();
  }
  return a.ambient_dim() == b.ambient_dim() && a.vertices() == b.vertices();
}

Polytope convex_hull(std::span<const Point> points, std::optional<LatticeTag> tag) {
  if (points.empty()) throw GeometryError("convex_hull of an empty point list");
  const std::size_t d = points[0].size();
  if (d == 0) throw GeometryError("convex_hull: zero ambient dimension");
  for (const auto& p : points) {
    if (p.size() != d) throw GeometryError("convex_hull: dimension mismatch among points");
  }

  const std::vector<Point> pts = hull_insertion_order(points);
  const PointTriangulation t = place_points(pts);
  const std::size_t k = t.dim;

  auto data = std::make_shared<Polytope::Data>();
  data->ambient = d;
  data->dim = k;

  // Supporting hyperplanes in the chart, merged by primitive outward normal.
  std::map<std::vector<Integer>, Rational> local_facets;
  for (const auto& face : t.boundary) {
    auto key = primitive_direction(face.normal);
    if (local_facets.count(key)) continue;
    const Rational off = dot(to_rational(key), t.local[face.points[0]]);
    local_facets.emplace(std::move(key), off);
  }

  std::vector<std::size_t> vertex_ids;
  if (k == 0) {
    vertex_ids.push_back(0);
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!t.used[i]) continue;
      Matrix tight;
      for (const auto& [n, off] : local_facets) {
        const auto nr = to_rational(n);
        if (dot(nr, t.local[i]) == off) tight.push_back(nr);
      }
      if (tight.size() >= k && rank(std::move(tight)) == k) vertex_ids.push_back(i);
    }
  }
  for (auto i : vertex_ids) data->vertices.push_back(pts[i]);
  std::sort(data->vertices.begin(), data->vertices.end());

  data->directions = t.basis;
  for (const auto& row : null_space(t.basis, d)) {
    AffineEquation eq;
    eq.normal = to_rational(primitive_direction(row));
    eq.value = dot(eq.normal, data->vertices[0]);
    data->equations.push_back(std::move(eq));
  }

  if (k > 0) {
    // Lift chart normals c to the direction space: a = B^T G^{-1} c, G = B B^T.
    Matrix gram(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(t.basis[i], t.basis[j]);
    }
    for (const auto& [n, off] : local_facets) {
      auto lambda = solve(gram, to_rational(n));
      if (!lambda) throw std::logic_error("convex_hull: singular Gram matrix");
      std::vector<Rational> a(d, Rational(0));
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t c = 0; c < d; ++c) a[c] += (*lambda)[j] * t.basis[j][c];
      }
      Facet f;
      f.normal = to_rational(primitive_direction(a));
      Rational best;
      bool first = true;
      for (std::size_t v = 0; v < data->vertices.size(); ++v) {
        const Rational val = dot(f.normal, data->vertices[v]);
        if (first || val > best) {
          best = val;
          first = false;
        }
      }
      f.offset = best;
      for (std::size_t v = 0; v < data->vertices.size(); ++v) {
        if (dot(f.normal, data->vertices[v]) == f.offset) f.vertices.push_back(v);
      }
      data->facets.push_back(std::move(f));
    }
    std::sort(data->facets.begin(), data->facets.end(),
              [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
  }

  data->volume = 0;
  if (k == d) {
    Rational sum = 0;
    for (const auto& cell : t.cells) sum += chart_simplex_volume_factor(t, cell);
    Integer fact = 1;
    for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<long>(i);
    data->volume = sum / Rational(fact);
  }

  bool integral = true;
  for (const auto& v : data->vertices) integral = integral && is_integral(v);
  if (tag == LatticeTag::Z && !integral) {
    throw LatticeError("lattice Z requested for a polytope with non-integral vertices");
  }
  data->tag = tag.value_or(integral ? LatticeTag::Z : LatticeTag::Q);
  return Polytope(std::move(data));
}

Polytope convex_hull(std::initializer_list<Point> points) {
  return convex_hull(std::span<const Point>(points.begin(), points.size()));
}

std::vector<Facet> facets(const Polytope& p) { return p.facets(); }

std::size_t FaceLattice::count(int dim) const {
  return static_cast<std::size_t>(
      std::count_if(faces.begin(), faces.end(), [dim](const Face& f) { return f.dim == dim; }));
}

FaceLattice face_lattice(const Polytope& p) {
  if (p.is_empty()) throw GeometryError("face_lattice of the empty polytope");
  const auto& verts = p.vertices();
  const auto& fs = p.facets();
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const auto& f : fs) facet_sets.push_back(f.vertices);

  std::vector<std::size_t> all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> queue{all};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto current = queue[head];
    for (const auto& fset : facet_sets) {
      std::vector<std::size_t> meet;
      std::set_intersection(current.begin(), current.end(), fset.begin(), fset.end(),
                            std::back_inserter(meet));
      if (meet.empty() || meet.size() == current.size()) continue;
      if (seen.insert(meet).second) queue.push_back(meet);
    }
  }

  FaceLattice lattice;
  for (const auto& ids : queue) {
    Face face;
    face.vertices = ids;
    if (ids.size() == verts.size()) {
      face.polytope = p;
    } else {
      std::vector<Point> pts;
      for (auto i : ids) pts.push_back(verts[i]);
      face.polytope = convex_hull(pts, p.lattice());
    }
    face.dim = face.polytope.dim();
    for (std::size_t j = 0; j < facet_sets.size(); ++j) {
      if (std::includes(facet_sets[j].begin(), facet_sets[j].end(), ids.begin(), ids.end())) {
        face.facets.push_back(j);
      }
    }
    lattice.faces.push_back(std::move(face));
  }
  std::sort(lattice.faces.begin(), lattice.faces.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  return lattice;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  check_same_dim(p, q, "minkowski_sum");
  std::vector<Point> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  }
  const bool lattice = p.lattice() == LatticeTag::Z && q.lattice() == LatticeTag::Z;
  return convex_hull(sums, lattice ? LatticeTag::Z : LatticeTag::Q);
}

Polytope minkowski_sum(std::span<const Polytope> ps, std::size_t ambient_dim) {
  Polytope acc = origin(ambient_dim);
  for (const auto& p : ps) acc = minkowski_sum(acc, p);
  return acc;
}

Polytope origin(std::size_t ambient_dim) {
  const Point zero = zero_point(ambient_dim);
  return convex_hull(std::span<const Point>(&zero, 1), LatticeTag::Z);
}

Polytope dilate(const Polytope& p, long n) {
  if (p.is_empty()) throw GeometryError("dilate: empty polytope");
  if (n < 0) throw GeometryError("dilate: negative factor");
  if (n == 0) return origin(p.ambient_dim());
  if (n == 1) return p;
  const Rational s(n);
  auto d = std::make_shared<Polytope::Data>(p.data());
  for (auto& v : d->vertices) v = scaled(v, s);
  for (auto& f : d->facets) f.offset *= s;
  for (auto& e : d->equations) e.value *= s;
  Rational vol_scale = 1;
  for (std::size_t i = 0; i < d->ambient; ++i) vol_scale *= s;
  d->volume *= vol_scale;
  return Polytope(std::move(d));
}

Polytope translate(const Polytope& p, const Point& t) {
  if (p.is_empty()) throw GeometryError("translate: empty polytope");
  if (t.size() != p.ambient_dim()) throw GeometryError("translate: dimension mismatch");
  auto d = std::make_shared<Polytope::Data>(p.data());
  for (auto& v : d->vertices) v = v + t;
  for (auto& f : d->facets) f.offset += dot(f.normal, t);
  for (auto& e : d->equations) e.value += dot(e.normal, t);
  if (!is_integral(t)) d->tag = LatticeTag::Q;
  return Polytope(std::move(d));
}

Polytope with_lattice(const Polytope& p, LatticeTag tag) {
  if (p.is_empty()) return p;
  if (tag == LatticeTag::Z && !p.has_integral_vertices()) {
    throw LatticeError("lattice Z requested for a polytope with non-integral vertices");
  }
  auto d = std::make_shared<Polytope::Data>(p.data());
  d->tag = tag;
  return Polytope(std::move(d));
}

bool contains(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("contains: dimension mismatch");
  if (q.is_empty()) return true;
  if (p.is_empty()) return false;
  for (const auto& v : q.vertices()) {
    if (!p.contains_point(v)) return false;
  }
  return true;
}

Rational exact_volume(const Polytope& p) {
  if (p.is_empty()) throw GeometryError("exact_volume of the empty polytope");
  return p.volume();
}

namespace {

Polytope cut(const Polytope& p, const std::vector<Rational>& normal, const Rational& bound,
             bool keep_below) {
  if (p.is_empty()) throw GeometryError("cut of the empty polytope");
  if (normal.size() != p.ambient_dim()) throw GeometryError("cut: dimension mismatch");
  const auto& verts = p.vertices();
  std::vector<Rational> val;
  for (const auto& v : verts) val.push_back(dot(normal, v));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (keep_below ? val[i] <= bound : val[i] == bound) pts.push_back(verts[i]);
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (val[i] < bound && val[j] > bound) {
        const Rational lambda = (bound - val[i]) / (val[j] - val[i]);
        pts.push_back(verts[i] + scaled(verts[j] - verts[i], lambda));
      }
    }
  }
  if (pts.empty()) return Polytope::empty(p.ambient_dim());
  Polytope out = convex_hull(pts);
  if (p.lattice() == LatticeTag::Q) out = with_lattice(out, LatticeTag::Q);
  return out;
}

}  // namespace

Polytope clip(const Polytope& p, const std::vector<Rational>& normal, const Rational& bound) {
  return cut(p, normal, bound, true);
}

Polytope slice(const Polytope& p, const std::vector<Rational>& normal, const Rational& bound) {
  return cut(p, normal, bound, false);
}

std::string to_string(const Polytope& p) {
  if (p.is_empty()) return "empty";
  std::string out = "conv{";
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.vertices()[i]);
  }
  return out + "}";
}

}  // namespace cmv
