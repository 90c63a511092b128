#include <gtest/gtest.h>

#include "cmv/errors.hpp"
#include "cmv/lattice.hpp"
#include "cmv/random.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace cmv;
using cmv::test::poly;
using cmv::test::pt;

namespace {

std::vector<std::size_t> facets_where(const Polytope& p, const std::vector<Rational>& normal) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < p.facets().size(); ++i) {
    if (p.facets()[i].normal == normal) ids.push_back(i);
  }
  return ids;
}

}  // namespace

TEST(LatticePoints, Examples) {
  Polytope tri = test::std_triangle();
  EXPECT_EQ(lattice_points(tri), (std::vector<Point>{pt({0, 0}), pt({0, 1}), pt({1, 0})}));
  EXPECT_EQ(count_lattice_points(origin(3)), 1u);
  EXPECT_EQ(lattice_points(origin(2)), (std::vector<Point>{pt({0, 0})}));
  EXPECT_EQ(count_lattice_points(dilate(tri, 2)), 6u);
  EXPECT_EQ(count_lattice_points(dilate(tri, 2)), oracle::lattice_count(dilate(tri, 2).vertices()));
}

TEST(LatticePoints, LowerDimensionalAndRational) {
  // Segment from (0,0,0) to (2,4,0) holds 3 lattice points.
  EXPECT_EQ(count_lattice_points(poly({{0, 0, 0}, {2, 4, 0}})), 3u);
  // Rational triangle conv{(1/2,0),(5/2,0),(1/2,2)}.
  std::vector<Point> v{{Rational(1, 2), Rational(0)},
                       {Rational(5, 2), Rational(0)},
                       {Rational(1, 2), Rational(2)}};
  Polytope p = convex_hull(v);
  EXPECT_EQ(count_lattice_points(p), oracle::lattice_count(v));
  // A segment off the lattice.
  std::vector<Point> off{{Rational(0), Rational(1, 2)}, {Rational(3), Rational(1, 2)}};
  EXPECT_EQ(count_lattice_points(convex_hull(off)), 0u);
}

TEST(HalfOpenPoints, Examples) {
  Polytope sq = test::unit_square();
  std::vector<std::size_t> removed = facets_where(sq, {1, 0});
  auto more = facets_where(sq, {0, 1});
  removed.insert(removed.end(), more.begin(), more.end());
  std::sort(removed.begin(), removed.end());
  EXPECT_EQ(count_half_open_points({sq, removed}), 1u);
  EXPECT_EQ(count_half_open_points({sq, {}}), count_lattice_points(sq));

  Polytope seg = poly({{0}, {2}});
  auto pts = half_open_points({seg, facets_where(seg, {1})});
  EXPECT_EQ(pts, (std::vector<Point>{pt({0}), pt({1})}));
}

TEST(RelintPoints, Examples) {
  Polytope tri = test::std_triangle();
  EXPECT_EQ(relint_points(dilate(tri, 3)), (std::vector<Point>{pt({1, 1})}));
  EXPECT_EQ(count_relint_points(tri), 0u);
  EXPECT_EQ(count_relint_points(origin(2)), 1u);
  EXPECT_THROW(count_relint_points(Polytope::empty(2)), GeometryError);
}

TEST(EulerRelint, DiscreteVolumeExamples) {
  auto dvol = [](const Polytope& p) { return Rational(count_lattice_points(p)); };
  auto chi = [](const Polytope& p) { return Rational(p.is_empty() ? 0 : 1); };
  // 3 - (2 + 2 + 2) + 3 * 1
  EXPECT_EQ(euler_relint_value(dvol, test::std_triangle()), 0);
  EXPECT_EQ(euler_relint_value(dvol, origin(2)), 1);
  EXPECT_EQ(euler_relint_value(chi, test::std_triangle()), 1);
  EXPECT_EQ(euler_relint_value(chi, test::seg_e1()), -1);
  EXPECT_EQ(euler_relint_value(chi, poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), -1);
}

TEST(LatticeProperties, ReciprocityOfRelintExpansion) {
  Rng rng(21);
  auto dvol = [](const Polytope& p) { return Rational(count_lattice_points(p)); };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 3, 6);
    EXPECT_EQ(euler_relint_value(dvol, p), Rational(count_relint_points(p)));
  }
}

TEST(LatticeProperties, ReferenceAndParallelKernelsAgree) {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 4, 7);
    Polytope q = dilate(p, rng.uniform(1, 3));
    EXPECT_EQ(lattice_points(q, Execution::reference), lattice_points(q, Execution::parallel));
    EXPECT_EQ(count_relint_points(q, Execution::reference),
              count_relint_points(q, Execution::parallel));
    std::vector<Point> v = q.vertices();
    if (d <= 2 && v.size() <= 6) {
      EXPECT_EQ(count_lattice_points(q), oracle::lattice_count(v));
    }
  }
}

TEST(LatticeProperties, MonotoneAndTranslationInvariant) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope q = random_lattice_polytope(rng, d, 3, 7);
    Polytope p = random_lattice_subpolytope(rng, q, 4);
    ASSERT_TRUE(contains(q, p));
    EXPECT_LE(count_lattice_points(p), count_lattice_points(q));
    Point t = random_lattice_point(rng, d, -4, 4);
    EXPECT_EQ(count_lattice_points(translate(q, t)), count_lattice_points(q));
  }
}

TEST(HalfOpen, MembershipMatchesEnumeration) {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    Polytope p = random_lattice_polytope(rng, 2, 4, 6);
    std::vector<std::size_t> removed;
    for (std::size_t i = 0; i < p.facets().size(); ++i) {
      if (rng.coin()) removed.push_back(i);
    }
    HalfOpenPolytope h{p, removed};
    auto pts = half_open_points(h);
    std::size_t direct = 0;
    for (const auto& x : lattice_points(p)) direct += h.contains_point(x) ? 1 : 0;
    EXPECT_EQ(pts.size(), direct);
  }
}
