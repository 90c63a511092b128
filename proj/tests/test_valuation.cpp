#include <gtest/gtest.h>

#include <algorithm>

#include "cmv/errors.hpp"
#include "cmv/lattice.hpp"
#include "cmv/random.hpp"
#include "cmv/valuation.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace cmv;
using cmv::test::poly;
using cmv::test::pt;

namespace {

Valuation vertex_count() {
  return {"vertices", LatticeRequirement::any,
          [](const Polytope& p) { return Rational(static_cast<long>(p.vertices().size())); }};
}

std::vector<Polytope> random_family(Rng& rng, std::size_t d, std::size_t r, std::int64_t box = 3,
                                    std::size_t max_points = 5) {
  std::vector<Polytope> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(random_lattice_polytope(rng, d, box, max_points));
  return out;
}

}  // namespace

TEST(Builtins, Examples) {
  EXPECT_EQ(discrete_volume()(test::std_triangle()), 3);
  EXPECT_EQ(discrete_volume()(test::std_triangle()),
            Rational(oracle::lattice_count(test::std_triangle().vertices())));
  EXPECT_EQ(volume()(test::unit_square()), 1);
  EXPECT_EQ(euler_characteristic()(test::std_triangle()), 1);
  EXPECT_EQ(euler_characteristic()(origin(3)), 1);
  EXPECT_EQ(interior_count()(dilate(test::std_triangle(), 3)), 1);
  EXPECT_EQ(interior_count()(poly({{0}, {3}})), -2);
  for (const auto& v : builtin_valuations()) EXPECT_EQ(v(Polytope::empty(2)), 0);
  ASSERT_EQ(builtin_valuations().size(), 4u);
  EXPECT_TRUE(builtin_valuation("interior"));
  EXPECT_FALSE(builtin_valuation("nope"));
}

TEST(Builtins, DvolRejectsNonIntegralVertices) {
  std::vector<Point> half{{Rational(1, 2), Rational(0)}, {Rational(1), Rational(0)}};
  Polytope p = convex_hull(half);
  EXPECT_THROW(discrete_volume()(p), LatticeError);
  EXPECT_THROW(interior_count()(p), LatticeError);
  EXPECT_EQ(volume()(p), 0);
  std::vector<Polytope> fam{p, test::seg_e2()};
  EXPECT_THROW(cm(discrete_volume(), fam), LatticeError);
}

TEST(Builtins, PassContractSuite) {
  for (const auto& v : builtin_valuations()) {
    for (std::size_t d = 1; d <= 3; ++d) {
      auto rep = check_valuation_contract(v, 25, d, 100 + d);
      EXPECT_TRUE(rep.passed()) << v.name() << " d=" << d << ": " << rep.violations[0].detail;
      EXPECT_GT(rep.additivity_checks, 0u);
    }
  }
}

TEST(Contract, RejectsNonValuations) {
  auto rep = check_valuation_contract(vertex_count(), 25, 2, 5);
  EXPECT_FALSE(rep.passed());
  Valuation unsigned_interior{"relint", LatticeRequirement::Z,
                              [](const Polytope& p) { return Rational(count_relint_points(p)); }};
  EXPECT_FALSE(check_valuation_contract(unsigned_interior, 25, 2, 5).passed());
  Valuation shifted{"first-coordinate", LatticeRequirement::any,
                    [](const Polytope& p) { return p.vertices()[0][0]; }};
  rep = check_valuation_contract(shifted, 10, 2, 5);
  ASSERT_FALSE(rep.passed());
  EXPECT_EQ(rep.violations[0].property, "translation");
}

TEST(Cm, Examples) {
  const auto dvol = discrete_volume();
  std::vector<Polytope> segs{test::seg_e1(), test::seg_e2()};
  EXPECT_EQ(cm(dvol, segs), 1);
  std::vector<Polytope> parallel{test::seg_e1(), test::seg_e1()};
  EXPECT_EQ(cm(dvol, parallel), 0);
  std::vector<Polytope> squares{test::unit_square(), test::unit_square()};
  EXPECT_EQ(cm(dvol, squares), 2);
  std::vector<Polytope> single{test::std_triangle()};
  EXPECT_EQ(cm(dvol, single), 3 - 1);
  EXPECT_EQ(cm(dvol, std::span<const Polytope>{}, 2), 1);
  for (const auto& fam : {segs, parallel, squares, single}) {
    EXPECT_EQ(cm(dvol, fam), oracle::cm_dvol(fam));
  }
  auto table = cm_table(dvol, segs, 2);
  ASSERT_EQ(table.terms.size(), 4u);
  EXPECT_EQ(table.terms[0].value, 1);
  EXPECT_EQ(table.terms[0].sign, 1);
  EXPECT_EQ(table.terms[1].sign, -1);
  EXPECT_EQ(table.terms[3].value, 4);
}

TEST(Cm, Errors) {
  std::vector<Polytope> mixed{test::seg_e1(), poly({{0, 0, 0}})};
  EXPECT_THROW(cm(volume(), mixed), GeometryError);
  std::vector<Polytope> with_empty{test::seg_e1(), Polytope::empty(2)};
  EXPECT_THROW(cm(volume(), with_empty), GeometryError);
}

TEST(Cm, MatchesCaratheodoryOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 2));
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 3));
    auto fam = random_family(rng, d, r, 2, 4);
    EXPECT_EQ(cm(discrete_volume(), fam), oracle::cm_dvol(fam));
  }
}

TEST(MixedPolynomial, Examples) {
  const auto dvol = discrete_volume();
  std::vector<Polytope> tri{test::std_triangle()};
  auto fit = fit_mixed_polynomial(dvol, tri, 2);
  EXPECT_TRUE(fit.ok());
  EXPECT_EQ(fit.degree_bound, 2);
  EXPECT_EQ(fit.polynomial.coefficient({0}), 1);
  EXPECT_EQ(fit.polynomial.coefficient({1}), 2);
  EXPECT_EQ(fit.polynomial.coefficient({2}), 1);
  // E(n T) = binom(n + 2, 2) from direct counts.
  for (long n = 0; n <= 5; ++n) {
    const long arg[] = {n};
    EXPECT_EQ(fit.polynomial.evaluate(arg), binomial(n + 2, 2));
    EXPECT_EQ(Rational(oracle::lattice_count(dilate(test::std_triangle(), n).vertices())),
              binomial(n + 2, 2));
  }

  std::vector<Polytope> segs{test::seg_e1(), test::seg_e2()};
  auto sp = mixed_polynomial(dvol, segs, 2);
  EXPECT_EQ(sp.coefficient({1, 1}), cm(dvol, segs));
  EXPECT_EQ(sp.coefficient({1, 1}), 1);

  auto chi = mixed_polynomial(euler_characteristic(), segs, 2);
  for (const auto& [alpha, c] : chi.coefficients) {
    EXPECT_EQ(c, std::all_of(alpha.begin(), alpha.end(), [](long a) { return a == 0; }) ? 1 : 0);
  }

  std::vector<Polytope> pt0{origin(2)};
  auto p = mixed_polynomial(dvol, pt0, 2);
  EXPECT_EQ(p.coefficient({0}), 1);
  EXPECT_EQ(p.coefficients.size(), 1u);
}

TEST(MixedPolynomial, ReconstructionForBuiltins) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 3));
    auto fam = random_family(rng, d, r, 2, 4);
    for (const auto& v : builtin_valuations()) {
      auto fit = fit_mixed_polynomial(v, fam, d);
      EXPECT_TRUE(fit.grid_reproduced) << v.name();
      EXPECT_TRUE(fit.probe_matches) << v.name();
      std::vector<long> ones(r, 1);
      EXPECT_EQ(fit.polynomial.coefficient(ones), cm(v, fam));
    }
  }
}

TEST(MixedPolynomial, NonValuationFailsReconstruction) {
  // The vertex count of n T + m [0,e1] jumps from 1 to 3 or 4.
  std::vector<Polytope> fam{test::std_triangle(), test::seg_e1()};
  auto fit = fit_mixed_polynomial(vertex_count(), fam, 2);
  EXPECT_FALSE(fit.ok());
}

TEST(MixedPolynomial, ReferenceAndParallelAgree) {
  Rng rng(33);
  auto fam = random_family(rng, 3, 2);
  auto a = fit_mixed_polynomial(discrete_volume(), fam, 3, Execution::reference);
  auto b = fit_mixed_polynomial(discrete_volume(), fam, 3, Execution::parallel);
  EXPECT_EQ(a.grid, b.grid);
  EXPECT_EQ(a.polynomial.coefficients, b.polynomial.coefficients);
}

TEST(CmMulti, Examples) {
  const auto dvol = discrete_volume();
  std::vector<Polytope> sq{test::unit_square()};
  const long two[] = {2};
  EXPECT_EQ(cm_multi(dvol, sq, two), 2);
  const long three[] = {3};
  EXPECT_EQ(cm_multi(dvol, sq, three), 0);
  std::vector<Polytope> segs{test::seg_e1(), test::seg_e2()};
  const long ones[] = {1, 1};
  EXPECT_EQ(cm_multi(dvol, segs, ones), cm(dvol, segs));
  const long over[] = {2, 1};
  EXPECT_EQ(cm_multi(dvol, segs, over), 0);
}

TEST(CmMulti, EqualsPolynomialCoefficient) {
  Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(2, 3));
    auto fam = random_family(rng, d, 2, 2, 4);
    auto fit = fit_mixed_polynomial(discrete_volume(), fam, d);
    for (const auto& [alpha, c] : fit.polynomial.coefficients) {
      if (alpha[0] + alpha[1] == 0) continue;
      EXPECT_EQ(cm_multi(discrete_volume(), fam, alpha), c);
    }
  }
}

TEST(CharacRecursion, Examples) {
  std::vector<Polytope> segs{test::seg_e1(), test::seg_e2()};
  EXPECT_TRUE(charac_recursion_check(discrete_volume(), segs));
  EXPECT_TRUE(charac_recursion_check(euler_characteristic(), segs));
  std::vector<Polytope> three{test::seg_e1(), test::seg_e2(), origin(2)};
  EXPECT_TRUE(charac_recursion_check(volume(), three));
  std::vector<Polytope> one{test::seg_e1()};
  EXPECT_THROW(charac_recursion_check(volume(), one), std::invalid_argument);
}

TEST(CharacRecursion, RandomFamilies) {
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    auto fam = random_family(rng, d, static_cast<std::size_t>(rng.uniform(2, 3)), 2, 4);
    for (const auto& v : builtin_valuations()) EXPECT_TRUE(charac_recursion_check(v, fam));
  }
}

TEST(ShiftValuation, Examples) {
  const auto dvol = discrete_volume();
  auto same = shift_valuation(dvol, origin(2));
  EXPECT_EQ(same(test::std_triangle()), dvol(test::std_triangle()));
  auto shifted = shift_valuation(dvol, test::seg_e2());
  std::vector<Polytope> one{test::seg_e1()};
  std::vector<Polytope> two{test::seg_e1(), test::seg_e2()};
  EXPECT_EQ(shifted(test::seg_e1()), 4);
  EXPECT_EQ(cm(shifted, one), 2);
  EXPECT_EQ(cm(shifted, one), cm(dvol, two) + cm(dvol, one));
  auto chi = shift_valuation(euler_characteristic(), test::unit_square());
  EXPECT_EQ(chi(test::seg_e1()), 1);
  EXPECT_THROW(shift_valuation(dvol, Polytope::empty(2)), GeometryError);
}

TEST(ShiftValuation, IdentityOnRandomFamilies) {
  Rng rng(36);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    auto fam = random_family(rng, d, static_cast<std::size_t>(rng.uniform(1, 3)), 2, 4);
    Polytope q = random_lattice_polytope(rng, d, 2, 4);
    auto with_q = fam;
    with_q.push_back(q);
    for (const auto& v : builtin_valuations()) {
      EXPECT_EQ(cm(shift_valuation(v, q), fam), cm(v, with_q, d) + cm(v, fam)) << v.name();
    }
  }
}

TEST(HStar, Examples) {
  const auto dvol = discrete_volume();
  auto tri = fit_h_star_vector(dvol, test::std_triangle());
  EXPECT_TRUE(tri.ok());
  EXPECT_EQ(tri.vector.entries, (std::vector<Rational>{1, 0, 0}));
  auto seg = h_star_vector(dvol, poly({{0}, {2}}));
  EXPECT_EQ(seg.entries, (std::vector<Rational>{1, 1}));
  auto chi = fit_h_star_vector(euler_characteristic(), test::unit_square());
  EXPECT_TRUE(chi.ok());
  for (long n = 0; n < 6; ++n) EXPECT_EQ(chi.vector.evaluate(n), 1);
  EXPECT_EQ(chi.vector.entries, (std::vector<Rational>{1, -2, 1}));
  EXPECT_EQ(h_star_vector(dvol, origin(2)).entries, (std::vector<Rational>{1}));
}

TEST(HStar, DvolEntriesNonnegativeAndSumToNormalizedVolume) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 3, 6);
    auto fit = fit_h_star_vector(discrete_volume(), p);
    EXPECT_TRUE(fit.ok());
    Rational sum = 0;
    for (const auto& h : fit.vector.entries) {
      EXPECT_GE(h, 0);
      sum += h;
    }
    if (static_cast<std::size_t>(p.dim()) == d) {
      Integer fact = 1;
      for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<long>(k);
      EXPECT_EQ(sum, p.volume() * fact);
    }
  }
}

TEST(WeakHStar, Examples) {
  EXPECT_TRUE(weak_hstar_monotone_check(discrete_volume(), 60, 3, 42).passed());
  EXPECT_TRUE(weak_hstar_monotone_check(volume(), 60, 3, 42).passed());
  auto synthetic = linear_combination(
      "dvol-2euler", {{Rational(1), discrete_volume()}, {Rational(-2), euler_characteristic()}});
  auto rep = weak_hstar_monotone_check(synthetic, 60, 2, 42);
  ASSERT_FALSE(rep.passed());
  for (const auto& w : rep.violations) {
    EXPECT_EQ(w.simplex.dim(), 0);
    EXPECT_TRUE(w.facet.is_empty());
    EXPECT_EQ(w.value, -1);
  }
  auto again = weak_hstar_monotone_check(synthetic, 60, 2, 42);
  EXPECT_EQ(again.violations.size(), rep.violations.size());
}

TEST(CmProperties, SymmetryAndVanishing) {
  Rng rng(38);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 2));
    auto fam = random_family(rng, d, d + static_cast<std::size_t>(rng.uniform(1, 2)), 2, 4);
    for (const auto& v : builtin_valuations()) EXPECT_EQ(cm(v, fam), 0) << v.name();
    auto perm = fam;
    rng.shuffle(perm);
    EXPECT_EQ(cm(discrete_volume(), perm), cm(discrete_volume(), fam));
  }
}

TEST(CmProperties, ValuationInEachArgument) {
  Rng rng(39);
  int checked = 0;
  for (int trial = 0; trial < 60 && checked < 15; ++trial) {
    const std::size_t d = 2;
    auto fam = random_family(rng, d, 2, 3, 6);
    const Polytope& p = fam[0];
    std::vector<Rational> a{1, 0};
    Rational lo = p.vertices().front()[0], hi = p.vertices().back()[0];
    if (hi - lo < 2) continue;
    const Rational c = lo + 1;
    Polytope left = clip(p, a, c), right = clip(p, {-1, 0}, -c), cut = slice(p, a, c);
    if (!left.has_integral_vertices() || !right.has_integral_vertices() ||
        !cut.has_integral_vertices()) {
      continue;
    }
    ++checked;
    for (const auto& v : builtin_valuations()) {
      auto f = [&](const Polytope& x) {
        std::vector<Polytope> g{x, fam[1]};
        return cm(v, g);
      };
      EXPECT_EQ(f(p), f(left) + f(right) - f(cut)) << v.name();
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(CmProperties, BernsteinAndMonotonicity) {
  Rng rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(2, 3));
    auto qs = random_family(rng, d, d, 3, 6);
    std::vector<Polytope> ps;
    for (const auto& q : qs) ps.push_back(random_lattice_subpolytope(rng, q, 4));
    const Rational small = cm(discrete_volume(), ps), big = cm(discrete_volume(), qs);
    EXPECT_GE(small, 0);
    EXPECT_LE(small, big);
    EXPECT_EQ(big, cm(volume(), qs));
    EXPECT_LE(cm(volume(), ps), cm(volume(), qs));
  }
}

TEST(CmProperties, DegreeBoundOfUnivariateRestriction) {
  Rng rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
    Polytope p = random_lattice_polytope(rng, d, 3, 6);
    const long D = p.dim();
    // Delta^{D+1} f(0) with f(n) = E(nP).
    Rational diff = 0;
    for (long k = 0; k <= D + 1; ++k) {
      Rational term = discrete_volume()(dilate(p, k)) * binomial(D + 1, k);
      diff += ((D + 1 - k) % 2 == 0) ? term : Rational(-term);
    }
    EXPECT_EQ(diff, 0);
  }
}

TEST(EvaluateAll, ReferenceAndParallelAgree) {
  Rng rng(42);
  std::vector<Polytope> batch;
  for (int i = 0; i < 30; ++i) batch.push_back(random_lattice_polytope(rng, 3, 4, 7));
  for (const auto& v : builtin_valuations()) {
    EXPECT_EQ(evaluate_all(v, batch, Execution::reference),
              evaluate_all(v, batch, Execution::parallel));
  }
  std::vector<Point> half{{Rational(1, 2)}, {Rational(2)}};
  batch.push_back(convex_hull(half));
  EXPECT_THROW(evaluate_all(discrete_volume(), batch, Execution::parallel), LatticeError);
}
