#include <gtest/gtest.h>

#include <set>

#include "cmv/errors.hpp"
#include "cmv/polytope.hpp"
#include "cmv/random.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace cmv;
using cmv::test::poly;
using cmv::test::pt;

namespace {

std::set<std::pair<std::vector<Rational>, Rational>> facet_set(const Polytope& p) {
  std::set<std::pair<std::vector<Rational>, Rational>> out;
  for (const auto& f : p.facets()) out.emplace(f.normal, f.offset);
  return out;
}

// Facets of a full-dimensional polygon from all vertex pairs whose line
// supports the polygon.
std::set<std::pair<std::vector<Rational>, Rational>> polygon_facets_oracle(
    const std::vector<Point>& verts) {
  std::set<std::pair<std::vector<Rational>, Rational>> out;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const Point e = verts[j] - verts[i];
      std::vector<Rational> n{-e[1], e[0]};
      const Rational off = dot(n, verts[i]);
      bool below = true, above = true;
      for (const auto& v : verts) {
        below = below && dot(n, v) <= off;
        above = above && dot(n, v) >= off;
      }
      if (!below && !above) continue;
      if (!below) n = {e[1], -e[0]};
      auto prim = primitive_direction(n);
      std::vector<Rational> pn(prim.begin(), prim.end());
      out.emplace(pn, dot(pn, verts[i]));
    }
  }
  return out;
}

int euler_sum(const FaceLattice& fl) {
  int s = 0;
  for (const auto& f : fl.faces) s += (f.dim % 2 == 0) ? 1 : -1;
  return s;
}

}  // namespace

TEST(ConvexHull, InteriorPointRemoved) {
  std::vector<Point> pts{pt({0, 0}), pt({1, 0}), pt({0, 1}), {Rational(1, 4), Rational(1, 4)}};
  Polytope p = convex_hull(pts);
  EXPECT_EQ(p.dim(), 2);
  EXPECT_EQ(p.vertices(), (std::vector<Point>{pt({0, 0}), pt({0, 1}), pt({1, 0})}));
  EXPECT_EQ(p.lattice(), LatticeTag::Z);
}

TEST(ConvexHull, Singleton) {
  Polytope p = poly({{0, 0}});
  EXPECT_EQ(p.dim(), 0);
  EXPECT_EQ(p.vertices().size(), 1u);
  EXPECT_TRUE(p.facets().empty());
}

TEST(ConvexHull, CollinearMidpointRemoved) {
  std::vector<Point> pts{pt({0, 0}), pt({1, 0}), pt({2, 0})};
  Polytope p = convex_hull(pts);
  EXPECT_EQ(p.dim(), 1);
  EXPECT_EQ(p.vertices(), oracle::extreme_points(pts));
  EXPECT_EQ(p.vertices(), (std::vector<Point>{pt({0, 0}), pt({2, 0})}));
}

TEST(ConvexHull, Errors) {
  std::vector<Point> none;
  EXPECT_THROW(convex_hull(none), GeometryError);
  std::vector<Point> mixed{pt({0, 0}), pt({1, 0, 0})};
  EXPECT_THROW(convex_hull(mixed), GeometryError);
  std::vector<Point> half{{Rational(1, 2), Rational(0)}};
  EXPECT_THROW(convex_hull(half, LatticeTag::Z), LatticeError);
  EXPECT_EQ(convex_hull(half).lattice(), LatticeTag::Q);
}

TEST(Facets, UnitSquare) {
  auto fs = facet_set(test::unit_square());
  std::set<std::pair<std::vector<Rational>, Rational>> expected{
      {{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 0}};
  EXPECT_EQ(fs, expected);
}

TEST(Facets, TriangleMatchesPairOracle) {
  Polytope t = test::std_triangle();
  EXPECT_EQ(facet_set(t), polygon_facets_oracle(t.vertices()));
  std::set<std::pair<std::vector<Rational>, Rational>> expected{
      {{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 1}};
  EXPECT_EQ(facet_set(t), expected);
}

TEST(Facets, SegmentInPlaneUsesInAffineNormals) {
  Polytope s = test::seg_e1();
  std::set<std::pair<std::vector<Rational>, Rational>> expected{{{1, 0}, 1}, {{-1, 0}, 0}};
  EXPECT_EQ(facet_set(s), expected);
  ASSERT_EQ(s.equations().size(), 1u);
  EXPECT_EQ(s.equations()[0].normal, (std::vector<Rational>{0, 1}));
}

TEST(Facets, TiltedSegmentNormalsLieInItsLine) {
  Polytope s = poly({{0, 0, 0}, {1, 2, 0}});
  for (const auto& f : s.facets()) {
    EXPECT_EQ(f.normal[2], 0);
    EXPECT_EQ(f.normal[1], 2 * f.normal[0]);
  }
}

TEST(Facets, RandomPolygonsMatchPairOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Polytope p = random_lattice_polytope(rng, 2, 4, 7);
    if (p.dim() != 2) continue;
    EXPECT_EQ(facet_set(p), polygon_facets_oracle(p.vertices()));
  }
}

TEST(FaceLattice, Square) {
  auto fl = face_lattice(test::unit_square());
  EXPECT_EQ(fl.count(0), 4u);
  EXPECT_EQ(fl.count(1), 4u);
  EXPECT_EQ(fl.count(2), 1u);
  EXPECT_EQ(euler_sum(fl), 1);
}

TEST(FaceLattice, Triangle) {
  auto fl = face_lattice(test::std_triangle());
  EXPECT_EQ(fl.count(0), 3u);
  EXPECT_EQ(fl.count(1), 3u);
  EXPECT_EQ(fl.count(2), 1u);
}

TEST(FaceLattice, CubeMatchesSupportingHyperplaneOracle) {
  Polytope cube = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                        {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  auto fl = face_lattice(cube);
  EXPECT_EQ(fl.count(0), 8u);
  EXPECT_EQ(fl.count(1), 12u);
  EXPECT_EQ(fl.count(2), 6u);
  EXPECT_EQ(fl.count(3), 1u);
  std::set<std::vector<std::size_t>> ours;
  for (const auto& f : fl.faces) ours.insert(f.vertices);
  EXPECT_EQ(ours, oracle::supporting_faces(cube.vertices(), 1));
}

TEST(FaceLattice, PointAndSegment) {
  EXPECT_EQ(face_lattice(poly({{3, 1}})).faces.size(), 1u);
  auto fl = face_lattice(test::seg_e2());
  EXPECT_EQ(fl.count(0), 2u);
  EXPECT_EQ(fl.count(1), 1u);
}

TEST(MinkowskiSum, Examples) {
  EXPECT_EQ(minkowski_sum(test::seg_e1(), test::seg_e2()), test::unit_square());
  Polytope tri = test::std_triangle();
  EXPECT_EQ(minkowski_sum(tri, origin(2)), tri);
  EXPECT_EQ(minkowski_sum(tri, test::seg_e1()), poly({{0, 0}, {2, 0}, {1, 1}, {0, 1}}));
  EXPECT_THROW(minkowski_sum(tri, poly({{0, 0, 0}})), GeometryError);
  EXPECT_THROW(minkowski_sum(tri, Polytope::empty(2)), GeometryError);
}

TEST(Dilate, Examples) {
  EXPECT_EQ(dilate(test::std_triangle(), 2), poly({{0, 0}, {2, 0}, {0, 2}}));
  EXPECT_EQ(dilate(test::std_triangle(), 0), origin(2));
  EXPECT_EQ(dilate(poly({{0}, {1}}), 3), poly({{0}, {3}}));
  Polytope d = dilate(test::unit_square(), 3);
  EXPECT_EQ(d.volume(), 9);
  EXPECT_EQ(facet_set(d), facet_set(convex_hull(d.vertices())));
}

TEST(Contains, Examples) {
  Polytope sq = test::unit_square();
  EXPECT_TRUE(contains(sq, test::seg_e1()));
  EXPECT_TRUE(contains(test::std_triangle(), poly({{1, 0}})));
  EXPECT_FALSE(contains(sq, poly({{0, 0}, {2, 0}})));
  EXPECT_FALSE(contains(test::seg_e1(), poly({{0, 1}})));
}

TEST(Volume, Examples) {
  EXPECT_EQ(exact_volume(test::unit_square()), 1);
  EXPECT_EQ(exact_volume(test::std_triangle()), Rational(1, 2));
  EXPECT_EQ(exact_volume(test::seg_e1()), 0);
  // Trapezoid with parallel sides 2 and 1 at unit height.
  std::vector<Point> cyclic{pt({0, 0}), pt({2, 0}), pt({1, 1}), pt({0, 1})};
  const Rational shoelace = oracle::shoelace_area(cyclic);
  EXPECT_EQ(shoelace, Rational(3, 2));
  EXPECT_EQ(exact_volume(convex_hull(cyclic)), shoelace);
  EXPECT_EQ(exact_volume(poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), Rational(1, 6));
}

TEST(Volume, RandomPolygonsMatchShoelace) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Polytope p = random_lattice_polytope(rng, 2, 5, 8);
    if (p.dim() != 2) continue;
    // Order vertices cyclically via the facet incidences.
    std::vector<Point> cyclic;
    std::vector<std::vector<std::size_t>> adj(p.vertices().size());
    for (const auto& f : p.facets()) {
      adj[f.vertices[0]].push_back(f.vertices[1]);
      adj[f.vertices[1]].push_back(f.vertices[0]);
    }
    std::size_t prev = adj[0][0], cur = 0;
    do {
      cyclic.push_back(p.vertices()[cur]);
      std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
    } while (cur != 0);
    EXPECT_EQ(p.volume(), oracle::shoelace_area(cyclic));
  }
}

TEST(Volume, PolygonAreaOracleOnRawPointSets) {
  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Point> pts;
    for (int k = 0; k < 7; ++k) pts.push_back(random_rational_point(rng, 2, -3, 3, 2));
    EXPECT_EQ(oracle::polygon_area(pts), exact_volume(convex_hull(pts)));
  }
  EXPECT_EQ(oracle::polygon_area({pt({0, 0}), pt({2, 2}), pt({1, 1})}), 0);
}

TEST(GeometryProperties, HullIdempotenceAndExtremePoints) {
  Rng rng(1);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Point> pts;
    const auto n = rng.uniform(1, 8);
    for (int i = 0; i < n; ++i) pts.push_back(random_lattice_point(rng, d, 0, 3));
    Polytope p = convex_hull(pts);
    EXPECT_EQ(p.vertices(), oracle::extreme_points(pts));
    EXPECT_EQ(convex_hull(p.vertices()), p);
    for (const auto& x : pts) EXPECT_TRUE(p.contains_point(x));
  }
}

TEST(GeometryProperties, VHConsistencyOnRationalPoints) {
  Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 3, 6);
    for (int k = 0; k < 15; ++k) {
      Point x = random_rational_point(rng, d, -1, 4, 3);
      EXPECT_EQ(p.contains_point(x), oracle::in_convex_hull(p.vertices(), x))
          << "x=" << to_string(x);
    }
    // Points on the hull itself: vertex midpoints.
    const auto& v = p.vertices();
    Point mid = scaled(v.front() + v.back(), Rational(1, 2));
    EXPECT_TRUE(p.contains_point(mid));
  }
}

TEST(GeometryProperties, MinkowskiAlgebra) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope a = random_lattice_polytope(rng, d, 2, 5);
    Polytope b = random_lattice_polytope(rng, d, 2, 5);
    Polytope c = random_lattice_polytope(rng, d, 2, 5);
    EXPECT_EQ(minkowski_sum(a, b), minkowski_sum(b, a));
    EXPECT_EQ(minkowski_sum(minkowski_sum(a, b), c), minkowski_sum(a, minkowski_sum(b, c)));
    EXPECT_EQ(minkowski_sum(a, origin(d)), a);
    EXPECT_LE(minkowski_sum(a, b).dim(), a.dim() + b.dim());
    const long m = rng.uniform(0, 3), n = rng.uniform(0, 3);
    EXPECT_EQ(dilate(a, m + n), minkowski_sum(dilate(a, m), dilate(a, n)));
  }
}

TEST(GeometryProperties, EulerRelation) {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 3, 8);
    EXPECT_EQ(euler_sum(face_lattice(p)), 1);
  }
}

TEST(GeometryProperties, VolumeTranslationInvariance) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 3, 8);
    Point t = random_lattice_point(rng, d, -5, 5);
    Polytope moved = minkowski_sum(p, convex_hull(std::vector<Point>{t}));
    EXPECT_EQ(exact_volume(moved), exact_volume(p));
    EXPECT_EQ(translate(p, t), moved);
  }
}

TEST(Clip, SplitsSquare) {
  Polytope sq = dilate(test::unit_square(), 2);
  Polytope left = clip(sq, {1, 0}, 1);
  Polytope mid = slice(sq, {1, 0}, 1);
  EXPECT_EQ(left, poly({{0, 0}, {1, 0}, {0, 2}, {1, 2}}));
  EXPECT_EQ(mid, poly({{1, 0}, {1, 2}}));
  EXPECT_TRUE(clip(sq, {1, 0}, -1).is_empty());
}
