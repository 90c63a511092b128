#include "cmv/cayley.hpp"

#include <numeric>
#include <set>

#include "cmv/errors.hpp"
#include "cmv/placing.hpp"
#include "cmv/random.hpp"

namespace cmv {

Point cayley_lift(const Point& x, std::size_t label, std::size_t r) {
  Point y = x;
  for (std::size_t i = 0; i < r; ++i) y.emplace_back(i == label ? 1 : 0);
  return y;
}

namespace {

std::size_t check_factors(const std::vector<Polytope>& polys) {
  if (polys.empty()) throw GeometryError("at least one factor is needed");
  const std::size_t d = polys[0].ambient_dim();
  for (const auto& p : polys) {
    if (p.is_empty()) throw GeometryError("factors must be nonempty");
    if (p.ambient_dim() != d) throw GeometryError("factors of different ambient dimensions");
  }
  return d;
}

// Pulls a Cayley simplex back to the mixed cell sum_i conv(x-parts of label i).
MixedCell pull_back(std::span<const Point> points, std::span<const std::size_t> labels,
                    const std::vector<std::size_t>& cell, std::size_t r, std::size_t d) {
  std::vector<std::vector<Point>> groups(r);
  for (auto idx : cell) {
    groups[labels[idx]].emplace_back(points[idx].begin(), points[idx].begin() + static_cast<long>(d));
  }
  std::vector<Polytope> summands;
  for (auto& g : groups) {
    if (g.empty()) throw std::logic_error("a maximal Cayley simplex misses a label");
    summands.push_back(convex_hull(g));
  }
  auto mc = MixedCell::from_summands(std::move(summands), d);
  if (!mc.exact()) throw std::logic_error("a Cayley simplex pulled back to a non-exact sum");
  return mc;
}

}  // namespace

CayleyPolytope cayley_polytope(const std::vector<Polytope>& polys) {
  check_factors(polys);
  CayleyPolytope c;
  c.factors = polys;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (const auto& v : polys[i].vertices()) {
      c.points.push_back(cayley_lift(v, i, polys.size()));
      c.labels.push_back(i);
    }
  }
  c.embedding = convex_hull(c.points);
  return c;
}

MixedDissection fine_mixed_dissection(const std::vector<Polytope>& polys,
                                      std::optional<std::uint64_t> shuffle_seed) {
  const std::size_t d = check_factors(polys);
  const std::size_t r = polys.size();
  auto cay = cayley_polytope(polys);
  std::vector<std::size_t> order(cay.points.size());
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    Rng rng(*shuffle_seed);
    rng.shuffle(order);
  }
  std::vector<Point> points;
  std::vector<std::size_t> labels;
  for (auto i : order) {
    points.push_back(cay.points[i]);
    labels.push_back(cay.labels[i]);
  }
  const auto t = place_points(points);
  MixedDissection md;
  md.factors = polys;
  md.dissection.target = minkowski_sum(polys, d);
  for (const auto& cell : t.cells) md.dissection.cells.push_back(pull_back(points, labels, cell, r, d));
  return md;
}

std::vector<MixedCell> restrict_to_support(const MixedDissection& md, std::span<const long> n) {
  const std::size_t r = md.factors.size();
  const std::size_t d = md.dissection.target.ambient_dim();
  if (n.size() != r) throw std::invalid_argument("multiplicity arity mismatch");
  std::vector<std::size_t> support;
  std::vector<Polytope> parts;
  for (std::size_t i = 0; i < r; ++i) {
    if (n[i] < 0) throw std::invalid_argument("negative multiplicity");
    if (n[i] > 0) {
      support.push_back(i);
      parts.push_back(md.factors[i]);
    }
  }
  if (support.empty()) return {MixedCell::from_summands({}, d)};
  const int full = minkowski_sum(parts, d).dim();
  std::set<std::vector<std::vector<Point>>> seen;
  std::vector<MixedCell> out;
  for (const auto& c : md.dissection.cells) {
    std::vector<Polytope> summands;
    std::vector<std::vector<Point>> key;
    int dim = 0;
    for (auto i : support) {
      summands.push_back(c.summands[i]);
      key.push_back(c.summands[i].vertices());
      dim += c.summands[i].dim();
    }
    if (dim != full || !seen.insert(key).second) continue;
    out.push_back(MixedCell::from_summands(std::move(summands), d));
  }
  return out;
}

namespace {

std::vector<long> support_of(std::span<const long> n) {
  std::vector<long> s;
  for (auto x : n) {
    if (x > 0) s.push_back(x);
  }
  return s;
}

MixedCell scale_cell(const MixedCell& c, std::span<const long> factors, std::size_t d) {
  std::vector<Polytope> summands;
  for (std::size_t i = 0; i < c.summands.size(); ++i) summands.push_back(dilate(c.summands[i], factors[i]));
  return MixedCell::from_summands(std::move(summands), d);
}

Polytope scaled_sum(const std::vector<Polytope>& factors, std::span<const long> n, std::size_t d) {
  std::vector<Polytope> parts;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (n[i] > 0) parts.push_back(dilate(factors[i], n[i]));
  }
  return parts.empty() ? origin(d) : minkowski_sum(parts, d);
}

}  // namespace

DilatedCounts dilated_cell_counts(const MixedDissection& md, std::span<const long> n,
                                  std::uint64_t seed) {
  const std::size_t d = md.dissection.target.ambient_dim();
  DilatedCounts out;
  out.n.assign(n.begin(), n.end());
  const auto restricted = restrict_to_support(md, n);
  const auto factors = support_of(n);
  out.dissection.target = scaled_sum(md.factors, n, d);
  for (const auto& c : restricted) out.dissection.cells.push_back(scale_cell(c, factors, d));
  const Point q = generic_interior_point(out.dissection, seed);
  assign_half_open(out.dissection, {HalfOpenRule::Kind::point, q});
  out.certificate = count_certificate(out.dissection);
  return out;
}

MixedDifference mixed_difference_dissection(const std::vector<Polytope>& inner,
                                            const std::vector<Polytope>& outer) {
  const std::size_t d = check_factors(inner);
  check_factors(outer);
  if (inner.size() != outer.size()) throw GeometryError("families of different lengths");
  if (outer[0].ambient_dim() != d) throw GeometryError("ambient dimensions differ");
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (!contains(outer[i], inner[i])) throw GeometryError("P_i is not contained in Q_i");
  }
  const std::size_t r = inner.size();
  MixedDifference md;
  md.inner = inner;
  md.outer = outer;
  md.dissection.target = minkowski_sum(outer, d);
  if (minkowski_sum(inner, d).dim() != md.dissection.target.dim()) {
    throw GeometryError("sum P and sum Q have different dimensions");
  }

  std::vector<Point> points;
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto& v : inner[i].vertices()) {
      points.push_back(cayley_lift(v, i, r));
      labels.push_back(i);
    }
  }
  const std::size_t inner_points = points.size();
  for (std::size_t i = 0; i < r; ++i) {
    const auto& pv = inner[i].vertices();
    for (const auto& v : outer[i].vertices()) {
      if (std::binary_search(pv.begin(), pv.end(), v)) continue;
      points.push_back(cayley_lift(v, i, r));
      labels.push_back(i);
    }
  }
  const auto t = place_points(points);
  std::vector<MixedCell> difference;
  for (const auto& cell : t.cells) {
    auto mc = pull_back(points, labels, cell, r, d);
    if (cell.back() < inner_points) {
      md.dissection.cells.push_back(std::move(mc));
    } else {
      difference.push_back(std::move(mc));
    }
  }
  md.inner_cells = md.dissection.cells.size();
  for (auto& c : difference) md.dissection.cells.push_back(std::move(c));
  return md;
}

DifferenceCounts difference_counts(const MixedDifference& md, std::span<const long> n,
                                   std::uint64_t seed) {
  const std::size_t r = md.inner.size();
  const std::size_t d = md.dissection.target.ambient_dim();
  if (n.size() != r) throw std::invalid_argument("multiplicity arity mismatch");
  for (auto x : n) {
    if (x <= 0) throw GeometryError("difference certificates need positive multiplicities");
  }
  Dissection probe;
  probe.target = scaled_sum(md.inner, n, d);
  for (const auto& c : md.dissection.cells) probe.cells.push_back(scale_cell(c, n, d));
  DifferenceCounts out;
  out.n.assign(n.begin(), n.end());
  out.q = generic_interior_point(probe, seed);
  const HalfOpenRule rule{HalfOpenRule::Kind::point, out.q};
  for (std::size_t k = 0; k < probe.cells.size(); ++k) {
    auto& c = probe.cells[k];
    c.removed = rule.apply(c.cell).removed;
    const LatticeCount count = count_half_open_points(c.half_open());
    if (k < md.inner_cells) {
      out.inner_total += count;
    } else {
      out.difference_total += count;
      out.difference_cells.push_back(c);
    }
  }
  out.inner_expected = count_lattice_points(probe.target);
  out.difference_expected = count_lattice_points(scaled_sum(md.outer, n, d)) - out.inner_expected;
  return out;
}

}  // namespace cmv
