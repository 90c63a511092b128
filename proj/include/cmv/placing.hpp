#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cmv/linalg.hpp"
#include "cmv/rational.hpp"

namespace cmv {

/// A (k-1)-simplex on the boundary of a placing triangulation together with
/// its outward hyperplane in local coordinates.
struct BoundaryFace {
  std::vector<std::size_t> points;  // sorted indices into the input
  std::vector<Rational> normal;     // local coordinates, outward
  Rational offset;                  // normal . y <= offset on the hull
};

/// Placing triangulation of a finite point set.
///
/// Points are inserted in input order. The first affinely independent
/// points (greedily, in order) form the seed simplex; every later point that
/// lies strictly beyond at least one boundary face is coned over all the
/// boundary faces it sees. Points that see no face (inside or on the
/// boundary of the current hull) are skipped and never appear in a cell.
struct PointTriangulation {
  std::size_t dim = 0;                          // affine dimension k
  std::size_t origin = 0;                       // index of the local origin
  std::vector<std::size_t> pivots;              // coordinates kept by the chart
  Matrix basis;                                 // RREF rows of the direction space
  std::vector<std::vector<Rational>> local;     // chart image of every input point
  std::vector<std::vector<std::size_t>> cells;  // sorted, k+1 indices each
  std::vector<BoundaryFace> boundary;
  std::vector<bool> used;                       // point appears in some cell
};

/// Throws GeometryError on an empty input or mixed ambient dimensions.
/// Duplicate points are tolerated; later copies are skipped.
PointTriangulation place_points(std::span<const Point> points);

/// k! times the k-volume of the simplex on `cell`, measured in the chart.
Rational chart_simplex_volume_factor(const PointTriangulation& t,
                                     std::span<const std::size_t> cell);

}  // namespace cmv
