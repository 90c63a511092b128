#include "cmv/random.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "cmv/lattice.hpp"
#include "cmv/linalg.hpp"

namespace cmv {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

Point random_lattice_point(Rng& rng, std::size_t dim, std::int64_t lo, std::int64_t hi) {
  Point p;
  p.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) p.emplace_back(rng.uniform(lo, hi));
  return p;
}

Point random_rational_point(Rng& rng, std::size_t dim, std::int64_t lo, std::int64_t hi,
                            std::int64_t max_den) {
  Point p;
  p.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::int64_t den = rng.uniform(1, max_den);
    const std::int64_t num = rng.uniform(lo * den, hi * den);
    p.emplace_back(num, den);
  }
  return p;
}

Polytope random_lattice_polytope(Rng& rng, std::size_t dim, std::int64_t box,
                                 std::size_t max_points) {
  const auto n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_points)));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_lattice_point(rng, dim, 0, box));
  return convex_hull(pts);
}

Polytope random_lattice_subpolytope(Rng& rng, const Polytope& q, std::size_t max_points) {
  std::vector<Point> pts = lattice_points(q);
  if (pts.empty()) throw std::invalid_argument("random_lattice_subpolytope: no lattice points");
  rng.shuffle(pts);
  const auto n = static_cast<std::size_t>(
      rng.uniform(1, static_cast<std::int64_t>(std::min(max_points, pts.size()))));
  pts.resize(n);
  return convex_hull(pts);
}

Polytope random_lattice_simplex(Rng& rng, std::size_t dim, std::size_t simplex_dim,
                                std::int64_t box) {
  if (simplex_dim > dim) throw std::invalid_argument("simplex dimension exceeds ambient");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i <= simplex_dim; ++i) {
      pts.push_back(random_lattice_point(rng, dim, 0, box));
    }
    if (affinely_independent(pts)) return convex_hull(pts);
  }
  throw std::runtime_error("random_lattice_simplex: box too small for requested dimension");
}

std::vector<Polytope> box_subpolytopes(std::size_t dim, std::int64_t side) {
  std::vector<Point> grid;
  std::vector<std::int64_t> x(dim, 0);
  while (true) {
    Point p;
    for (auto c : x) p.emplace_back(c);
    grid.push_back(std::move(p));
    std::size_t j = 0;
    while (j < dim && x[j] == side) x[j++] = 0;
    if (j == dim) break;
    ++x[j];
  }
  if (grid.size() > 20) throw std::invalid_argument("box_subpolytopes: box too large");
  std::set<std::vector<Point>> seen;
  std::vector<Polytope> out;
  for (std::uint32_t mask = 1; mask < (1u << grid.size()); ++mask) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (mask >> i & 1) pts.push_back(grid[i]);
    }
    Polytope p = convex_hull(pts);
    if (seen.insert(p.vertices()).second) out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](const Polytope& a, const Polytope& b) { return a.vertices() < b.vertices(); });
  return out;
}

std::optional<HyperplaneSplit> random_split(Rng& rng, const Polytope& p, bool integral_pieces) {
  const std::size_t dim = p.ambient_dim();
  std::vector<Rational> a(dim, Rational(0));
  const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim) - 1));
  a[j] = 1;
  const auto kind = dim == 1 ? 0 : rng.uniform(0, 2);
  if (kind != 0) {
    auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim) - 2));
    if (i >= j) ++i;
    a[i] = kind == 1 ? 1 : -1;
  }
  Rational lo = dot(a, p.vertices()[0]), hi = lo;
  for (const auto& v : p.vertices()) {
    lo = std::min(lo, dot(a, v));
    hi = std::max(hi, dot(a, v));
  }
  if (lo == hi || floor_of(hi) < ceil_of(lo)) return std::nullopt;
  const Integer c = ceil_of(lo) + rng.uniform(0, to_int64(floor_of(hi) - ceil_of(lo)));
  std::vector<Rational> neg(dim);
  for (std::size_t k = 0; k < dim; ++k) neg[k] = -a[k];
  HyperplaneSplit out{a, Rational(c), clip(p, a, Rational(c)), clip(p, neg, Rational(-c)),
                      slice(p, a, Rational(c))};
  if (integral_pieces && !(out.below.has_integral_vertices() && out.above.has_integral_vertices() &&
                           out.cut.has_integral_vertices())) {
    return std::nullopt;
  }
  return out;
}

}  // namespace cmv
