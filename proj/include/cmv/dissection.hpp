#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmv/lattice.hpp"
#include "cmv/polytope.hpp"

namespace cmv {

/// H_q P: removes the facets of P visible from q. Throws GeometryError if q is
/// outside aff(P) and NonGenericError if q lies on a facet hyperplane.
HalfOpenPolytope half_open_by_point(const Polytope& p, const Point& q);

/// H_u P: removes the facets whose outer normal a has a . u > 0. Throws
/// GeometryError if u is not parallel to aff(P) and NonGenericError if some
/// facet normal is orthogonal to u.
HalfOpenPolytope half_open_by_direction(const Polytope& p, const Point& u);

/// For a simplex S and a point q outside S (generic), a direction u with
/// H_u S = H_q S.
std::optional<Point> direction_matching_point(const Polytope& simplex, const Point& q);

/// Splits q in aff(S_1 + ... + S_r) (exact sum) into q_i in aff(S_i) with
/// q = q_1 + ... + q_r. Throws GeometryError if the sum is not exact or q is
/// outside the affine hull.
std::vector<Point> split_point(const std::vector<Polytope>& summands, const Point& q);

struct HalfOpenRule {
  enum class Kind { point, direction };
  Kind kind = Kind::point;
  Point vector;

  HalfOpenPolytope apply(const Polytope& p) const;
  std::string describe() const;
};

struct MixedCell {
  std::vector<Polytope> summands;  // one per factor; points allowed
  Polytope cell;                   // their Minkowski sum
  std::vector<std::size_t> removed;

  static MixedCell from_summands(std::vector<Polytope> summands, std::size_t ambient_dim);

  HalfOpenPolytope half_open() const { return {cell, removed}; }
  bool exact() const;
  /// Number of summands of positive dimension.
  std::size_t cylinder_order() const;
};

struct Dissection {
  Polytope target;
  std::vector<MixedCell> cells;
  std::optional<HalfOpenRule> rule;  // how `removed` was assigned
};

/// Recomputes every cell's removed facets. Throws NonGenericError if the rule
/// is not generic for some cell or the target.
void assign_half_open(Dissection& d, const HalfOpenRule& rule);

/// A point of relint(target) off every facet hyperplane of the target and the
/// cells, from a seeded deterministic search.
Point generic_interior_point(const Dissection& d, std::uint64_t seed);
/// A direction parallel to aff(target) and orthogonal to no facet normal.
Point generic_direction(const Dissection& d, std::uint64_t seed);

struct CountCertificate {
  std::vector<LatticeCount> cell_counts;
  LatticeCount total = 0;
  LatticeCount expected = 0;  // points of the target under the same rule
  bool ok() const { return total == expected; }
};

/// Sums the half-open counts of the cells against the count of the target
/// under the dissection's rule.
CountCertificate count_certificate(const Dissection& d, Execution exec = Execution::parallel);

struct PartitionCheck {
  std::size_t points = 0;          // lattice points of the half-open target
  std::size_t uncovered = 0;       // target points in no cell
  std::size_t multiply_covered = 0;
  std::size_t stray = 0;           // cell points outside the half-open target
  bool ok() const { return uncovered == 0 && multiply_covered == 0 && stray == 0; }
};

/// Point-by-point check that the half-open cells partition the lattice
/// points of the half-open target.
PartitionCheck partition_check(const Dissection& d);

/// Volume of `cell` measured in the coordinate chart of aff(target), so that
/// lower-dimensional targets get a meaningful sum.
Rational chart_volume(const Polytope& target, const Polytope& cell);

struct VolumeCertificate {
  Rational total;
  Rational expected;
  bool ok() const { return total == expected; }
};

VolumeCertificate volume_certificate(const Dissection& d);

/// Dissection of n S = { 0 <= x_1 <= ... <= x_d <= n } into the cells
/// b + S(b), b weakly increasing in {0..n-1}^d. Each cell is a cylinder with
/// one simplex summand per block of equal coordinates of b. Cells carry the
/// half-open state of the direction (1, 2, ..., d).
Dissection boxcell_dissection(std::size_t d, long n);

/// The simplex { 0 <= x_1 <= ... <= x_d <= n }.
Polytope order_simplex(std::size_t d, long n);

/// Staircase triangulation of the exact sum S1 + S2 of two simplices.
Dissection staircase_dissection(const Polytope& s1, const Polytope& s2);

/// Splits the cylinder c into (k-1)-cylinders by a staircase triangulation of
/// its first two positive-dimensional summands. Cells are closed.
std::vector<MixedCell> chain_refinement(const MixedCell& c);

/// Placing triangulation with vertices inserted in `order`, which must be a
/// permutation of the vertices of p.
Dissection placing_triangulation(const Polytope& p, const std::vector<Point>& order);

}  // namespace cmv
