#pragma once

#include <initializer_list>
#include <vector>

#include "cmv/polytope.hpp"

namespace cmv::test {

inline Point pt(std::initializer_list<long> coords) {
  Point p;
  for (auto c : coords) p.emplace_back(c);
  return p;
}

inline Polytope poly(std::initializer_list<std::initializer_list<long>> vertices) {
  std::vector<Point> pts;
  for (const auto& v : vertices) pts.push_back(pt(v));
  return convex_hull(pts);
}

inline Polytope unit_square() { return poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
inline Polytope std_triangle() { return poly({{0, 0}, {1, 0}, {0, 1}}); }
inline Polytope seg_e1() { return poly({{0, 0}, {1, 0}}); }
inline Polytope seg_e2() { return poly({{0, 0}, {0, 1}}); }

}  // namespace cmv::test
