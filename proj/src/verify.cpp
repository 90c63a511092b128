#include "cmv/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "cmv/cayley.hpp"
#include "cmv/dissection.hpp"
#include "cmv/errors.hpp"
#include "cmv/lattice.hpp"
#include "cmv/linalg.hpp"
#include "cmv/positivity.hpp"
#include "cmv/random.hpp"

namespace cmv {

Valuation faulty_vertex_count() {
  return Valuation("vertex-count", LatticeRequirement::any,
                   [](const Polytope& p) { return Rational(static_cast<long>(p.vertices().size())); });
}

namespace {

struct Context {
  const SuiteOptions& opts;
  Rng rng;
  SuiteResult& result;
  std::optional<std::size_t> best_weight;

  std::vector<Valuation> valuations() const {
    if (opts.valuation) return {*opts.valuation};
    return builtin_valuations();
  }

  // The failing instance with the smallest weight is kept as the witness.
  void check(bool ok, std::size_t weight, const std::function<std::string()>& describe) {
    ++result.checks;
    if (ok) return;
    result.passed = false;
    ++result.failures;
    if (!best_weight || weight < *best_weight) {
      best_weight = weight;
      result.counterexample = describe();
    }
  }

  std::size_t dim_in(std::size_t lo, std::size_t hi) {
    hi = std::min(hi, opts.dim);
    lo = std::min(lo, hi);
    return static_cast<std::size_t>(
        rng.uniform(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  }

  std::size_t count_in(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(
        rng.uniform(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(std::max(lo, hi))));
  }

  static std::int64_t box_for(std::size_t d) { return d <= 2 ? 3 : 2; }

  std::vector<Polytope> family(std::size_t d, std::size_t r, std::size_t max_points = 4) {
    std::vector<Polytope> ps;
    for (std::size_t i = 0; i < r; ++i) ps.push_back(random_lattice_polytope(rng, d, box_for(d), max_points));
    return ps;
  }

  // P_i subset Q_i.
  std::pair<std::vector<Polytope>, std::vector<Polytope>> nested(std::size_t d, std::size_t r) {
    std::vector<Polytope> ps, qs;
    for (std::size_t i = 0; i < r; ++i) {
      qs.push_back(random_lattice_polytope(rng, d, box_for(d), 5));
      ps.push_back(random_lattice_subpolytope(rng, qs.back(), 4));
    }
    return {ps, qs};
  }

  // Exact sum of random simplices of total dimension d, up to `tries` attempts.
  std::optional<MixedCell> cylinder(std::size_t d, std::size_t min_summands, int tries = 20) {
    for (int t = 0; t < tries; ++t) {
      std::vector<Polytope> summands;
      std::size_t left = d;
      while (left > 0) {
        const auto k = count_in(1, left);
        summands.push_back(random_lattice_simplex(rng, d, k, 2));
        left -= k;
      }
      if (summands.size() < min_summands) continue;
      auto cell = MixedCell::from_summands(summands, d);
      if (cell.exact()) return cell;
    }
    return std::nullopt;
  }
};

std::size_t weight(std::span<const Polytope> ps) {
  std::size_t w = 0;
  for (const auto& p : ps) w += p.vertices().size();
  return w;
}

std::string describe(std::span<const Polytope> ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += "; ";
    out += "P" + std::to_string(i + 1) + " = " + to_string(ps[i]);
  }
  return out;
}

std::string describe_nested(std::span<const Polytope> ps, std::span<const Polytope> qs) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += "; ";
    out += "P" + std::to_string(i + 1) + " = " + to_string(ps[i]) + " in Q" + std::to_string(i + 1) +
           " = " + to_string(qs[i]);
  }
  return out;
}

std::string valued(const Valuation& phi, const std::string& what, const Rational& a,
                   const std::string& other, const Rational& b) {
  return phi.name() + ": " + what + " = " + to_string(a) + " but " + other + " = " + to_string(b);
}

// ---- exact geometry -------------------------------------------------------

// x in P via barycentric coordinates in the cells of a placing triangulation.
bool in_by_triangulation(const Polytope& p, const Point& x) {
  if (p.dim() == 0) return x == p.vertices()[0];
  const auto dis = placing_triangulation(p, p.vertices());
  for (const auto& c : dis.cells) {
    const auto& vs = c.cell.vertices();
    Matrix a;
    std::vector<Rational> b;
    for (std::size_t j = 0; j < x.size(); ++j) {
      std::vector<Rational> row;
      for (const auto& v : vs) row.push_back(v[j]);
      a.push_back(row);
      b.push_back(x[j]);
    }
    a.push_back(std::vector<Rational>(vs.size(), Rational(1)));
    b.push_back(Rational(1));
    auto lambda = particular_solution(a, b, vs.size());
    if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rational& l) { return l >= 0; })) {
      return true;
    }
  }
  return false;
}

void suite_hull(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    Polytope p = ctx.rng.coin() ? random_lattice_polytope(ctx.rng, d, 3, 6) : [&] {
      std::vector<Point> pts;
      for (int k = 0; k < 5; ++k) pts.push_back(random_rational_point(ctx.rng, d, -2, 2, 3));
      return convex_hull(pts, LatticeTag::Q);
    }();
    const std::vector<Polytope> one{p};
    auto again = convex_hull(p.vertices(), p.lattice());
    ctx.check(again == p, weight(one), [&] { return "hull of the vertices differs: " + describe(one); });

    long euler = 0;
    for (const auto& f : face_lattice(p).faces) euler += f.dim % 2 == 0 ? 1 : -1;
    ctx.check(euler == 1, weight(one), [&] {
      return "alternating face count " + std::to_string(euler) + " != 1 for " + describe(one);
    });

    for (int k = 0; k < 4; ++k) {
      Point x = random_rational_point(ctx.rng, d, -1, 3, 4);
      if (k == 0) x = p.vertices()[0];
      const bool h = p.contains_point(x);
      const bool v = in_by_triangulation(p, x);
      ctx.check(h == v, weight(one), [&] {
        return "H-membership " + std::to_string(h) + " but V-membership " + std::to_string(v) +
               " for x = " + to_string(x) + " in " + describe(one);
      });
    }
  }
}

void suite_minkowski(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, 3);
    const auto w = weight(ps);
    const auto& [a, b, c] = std::tie(ps[0], ps[1], ps[2]);
    ctx.check(minkowski_sum(a, b) == minkowski_sum(b, a), w,
              [&] { return "P1 + P2 != P2 + P1 for " + describe(ps); });
    ctx.check(minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c)), w,
              [&] { return "(P1 + P2) + P3 != P1 + (P2 + P3) for " + describe(ps); });
    ctx.check(minkowski_sum(a, origin(d)) == a, w, [&] { return "P1 + {0} != P1 for " + describe(ps); });
    const long m = ctx.rng.uniform(0, 2), n = ctx.rng.uniform(0, 2);
    ctx.check(dilate(a, m + n) == minkowski_sum(dilate(a, m), dilate(a, n)), w, [&] {
      return std::to_string(m + n) + "P1 != " + std::to_string(m) + "P1 + " + std::to_string(n) +
             "P1 for " + describe(ps);
    });
    const Point shift = random_lattice_point(ctx.rng, d, -3, 3);
    ctx.check(exact_volume(minkowski_sum(a, convex_hull({shift}))) == exact_volume(a), w, [&] {
      return "volume changes under translation by " + to_string(shift) + " for " + describe(ps);
    });
  }
}

// ---- lattice enumeration --------------------------------------------------

void suite_lattice_count(Context& ctx) {
  const auto dvol = discrete_volume();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto [ps, qs] = ctx.nested(d, 1);
    const Polytope& p = ps[0];
    const Polytope& q = qs[0];
    const auto w = weight(ps) + weight(qs);
    const Rational relint = euler_relint_value([&](const Polytope& f) { return dvol(f); }, p);
    const auto direct = count_relint_points(p);
    ctx.check(relint == Rational(static_cast<long>(direct)), w, [&] {
      return "face expansion gives " + to_string(relint) + " interior points, scan gives " +
             std::to_string(direct) + " for " + describe(ps);
    });
    const auto cp = count_lattice_points(p), cq = count_lattice_points(q);
    ctx.check(cp <= cq, w, [&] {
      return std::to_string(cp) + " > " + std::to_string(cq) + " for " + describe_nested(ps, qs);
    });
    const Point shift = random_lattice_point(ctx.rng, d, -4, 4);
    const auto moved = count_lattice_points(translate(q, shift));
    ctx.check(moved == cq, w, [&] {
      return "count " + std::to_string(cq) + " becomes " + std::to_string(moved) + " after shifting by " +
             to_string(shift) + ": " + describe(qs);
    });
    const auto serial = count_lattice_points(q, Execution::reference);
    ctx.check(serial == cq, w, [&] {
      return "serial scan " + std::to_string(serial) + " vs parallel " + std::to_string(cq) + " for " +
             describe(qs);
    });
  }
}

// ---- valuations -----------------------------------------------------------

void suite_contract(Context& ctx) {
  for (const auto& phi : ctx.valuations()) {
    const auto report =
        check_valuation_contract(phi, ctx.opts.trials, ctx.opts.dim, ctx.rng.uniform(0, INT32_MAX));
    ctx.result.checks += report.trials + report.additivity_checks;
    for (const auto& v : report.violations) {
      --ctx.result.checks;  // counted again by check()
      ctx.check(false, weight(v.polytopes),
                [&] { return phi.name() + " " + v.property + ": " + v.detail; });
    }
  }
}

void suite_symmetry(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(2, 3));
    auto perm = ps;
    ctx.rng.shuffle(perm);
    for (const auto& phi : phis) {
      const Rational a = cm(phi, ps), b = cm(phi, perm);
      ctx.check(a == b, weight(ps), [&] {
        return valued(phi, "cm", a, "cm of the permuted family", b) + " for " + describe(ps);
      });
    }
  }
}

void suite_argument_additivity(Context& ctx) {
  const auto phis = ctx.valuations();
  bool integral = false;
  for (const auto& phi : phis) integral = integral || phi.lattice_requirement() == LatticeRequirement::Z;
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, std::min<std::size_t>(d, 3)), 5);
    const auto k = ctx.count_in(0, ps.size() - 1);
    std::optional<HyperplaneSplit> split;
    for (int attempt = 0; attempt < 4 && !split; ++attempt) split = random_split(ctx.rng, ps[k], integral);
    if (!split) continue;
    auto with = [&](const Polytope& piece) {
      auto qs = ps;
      qs[k] = piece;
      return qs;
    };
    for (const auto& phi : phis) {
      const Rational whole = cm(phi, ps, d);
      const Rational parts = cm(phi, with(split->below), d) + cm(phi, with(split->above), d) -
                             cm(phi, with(split->cut), d);
      ctx.check(whole == parts, weight(ps), [&] {
        return valued(phi, "cm", whole, "the split of P" + std::to_string(k + 1) + " by " +
                                            to_string(split->normal) + " = " + to_string(split->offset) +
                                            " gives",
                      parts) +
               " for " + describe(ps);
      });
    }
  }
}

void suite_vanishing(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, d + ctx.count_in(1, 2), 3);
    for (const auto& phi : phis) {
      const Rational v = cm(phi, ps);
      ctx.check(v == 0, weight(ps), [&] {
        return phi.name() + ": cm = " + to_string(v) + " for " + std::to_string(ps.size()) +
               " polytopes in dimension " + std::to_string(d) + ": " + describe(ps);
      });
    }
  }
}

void monotone_suite(Context& ctx, const Valuation& phi) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto [ps, qs] = ctx.nested(d, ctx.count_in(1, d));
    const Rational small = cm(phi, ps), large = cm(phi, qs);
    ctx.check(0 <= small && small <= large, weight(ps) + weight(qs), [&] {
      return phi.name() + ": cm(P) = " + to_string(small) + ", cm(Q) = " + to_string(large) + " for " +
             describe_nested(ps, qs);
    });
  }
}

void suite_monotonicity(Context& ctx) {
  monotone_suite(ctx, ctx.opts.valuation ? *ctx.opts.valuation : discrete_volume());
}

void suite_vol_monotone(Context& ctx) { monotone_suite(ctx, volume()); }

void suite_bernstein(Context& ctx) {
  const auto dvol = discrete_volume(), vol = volume();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, d);
    const Rational a = cm(dvol, ps), b = cm(vol, ps);
    ctx.check(a == b, weight(ps), [&] {
      return "cm(dvol) = " + to_string(a) + " but cm(vol) = " + to_string(b) + " for " + describe(ps);
    });
  }
}

void suite_proportionality(Context& ctx) {
  const auto dvol = discrete_volume(), vol = volume();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    auto ps = ctx.family(2, 2, 5);
    const Rational a = cm(dvol, ps), b = cm(vol, ps);
    ctx.check(a == b, weight(ps), [&] {
      return "cm(dvol) = " + to_string(a) + " but cm(vol) = " + to_string(b) + " for " + describe(ps);
    });
  }
}

void suite_degree_bound(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, 2), 3);
    const Polytope sum = minkowski_sum(ps, d);
    const long top = sum.dim() + 1;
    for (const auto& phi : phis) {
      Rational diff = 0;
      for (long k = 0; k <= top; ++k) {
        const Rational term = Rational(binomial(top, k)) * phi(dilate(sum, k));
        diff += (top - k) % 2 == 0 ? term : -term;
      }
      ctx.check(diff == 0, weight(ps), [&] {
        return phi.name() + ": difference of order " + std::to_string(top) + " of n -> phi(n P) is " +
               to_string(diff) + " for P = " + to_string(sum);
      });
    }
  }
}

void suite_reconstruction(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, 2), 3);
    for (const auto& phi : phis) {
      const auto fit = fit_mixed_polynomial(phi, ps, d);
      ctx.check(fit.ok(), weight(ps), [&] {
        std::string what = phi.name() + ": ";
        if (!fit.grid_reproduced) return what + "grid not reproduced for " + describe(ps);
        return what + "value " + to_string(fit.probe_value) + " but prediction " +
               to_string(fit.probe_prediction) + " off the grid for " + describe(ps);
      });
    }
  }
}

void suite_shift_identity(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, std::min<std::size_t>(d, 2)), 3);
    const Polytope q = random_lattice_polytope(ctx.rng, d, 2, 3);
    auto extended = ps;
    extended.push_back(q);
    for (const auto& phi : phis) {
      const Rational lhs = cm(shift_valuation(phi, q), ps, d);
      const Rational rhs = cm(phi, extended, d) + cm(phi, ps, d);
      ctx.check(lhs == rhs, weight(extended), [&] {
        return valued(phi, "cm of the shifted valuation", lhs, "cm(P, Q) + cm(P)", rhs) + " for " +
               describe(ps) + "; Q = " + to_string(q);
      });
    }
  }
}

void suite_recursion(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(2, 3), 3);
    for (const auto& phi : phis) {
      ctx.check(charac_recursion_check(phi, ps), weight(ps), [&] {
        return phi.name() + ": cm(P1, P2, ...) != cm(P1 + P2, ...) - cm(P1, ...) - cm(P2, ...) for " +
               describe(ps);
      });
    }
  }
}

void suite_h_star(Context& ctx) {
  const auto phis = ctx.valuations();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, 1, 5);
    for (const auto& phi : phis) {
      const auto fit = fit_h_star_vector(phi, ps[0]);
      ctx.check(fit.ok(), weight(ps), [&] {
        return valued(phi, "phi((r+1)P)", fit.check_value, "the h-vector predicts", fit.check_prediction) +
               " for " + describe(ps);
      });
      if (phi.name() == "dvol") {
        const auto& h = fit.vector.entries;
        const bool nonneg = std::all_of(h.begin(), h.end(), [](const Rational& x) { return x >= 0; });
        ctx.check(nonneg, weight(ps), [&] {
          std::string s = "negative h*-entry in (";
          for (std::size_t i = 0; i < h.size(); ++i) s += (i ? ", " : "") + to_string(h[i]);
          return s + ") for " + describe(ps);
        });
      }
    }
  }
}

void suite_weak_h_star(Context& ctx) {
  std::vector<Valuation> phis{discrete_volume(), volume()};
  if (ctx.opts.valuation) phis = {*ctx.opts.valuation};
  for (const auto& phi : phis) {
    const auto report =
        weak_hstar_monotone_check(phi, ctx.opts.trials, ctx.opts.dim, ctx.rng.uniform(0, INT32_MAX));
    ctx.result.checks += report.trials;
    for (const auto& w : report.violations) {
      --ctx.result.checks;
      const std::vector<Polytope> parts{w.simplex};
      ctx.check(false, weight(parts), [&] {
        return phi.name() + ": phi(relint S) + phi(relint F) = " + to_string(w.value) + " for S = " +
               to_string(w.simplex) + ", F = " + to_string(w.facet);
      });
    }
  }
}

// ---- dissections ----------------------------------------------------------

std::optional<HalfOpenRule> sample_rule(Context& ctx, const Dissection& dis, std::size_t kind) {
  const auto seed = static_cast<std::uint64_t>(ctx.rng.uniform(0, INT32_MAX));
  try {
    switch (kind % 3) {
      case 0:
        return HalfOpenRule{HalfOpenRule::Kind::point, generic_interior_point(dis, seed)};
      case 1:
        return HalfOpenRule{HalfOpenRule::Kind::direction, generic_direction(dis, seed)};
      default:
        return HalfOpenRule{HalfOpenRule::Kind::point,
                            generic_interior_point(dis, seed) +
                                scaled(generic_direction(dis, seed), Rational(ctx.rng.uniform(5, 50)))};
    }
  } catch (const NonGenericError&) {
    return std::nullopt;
  }
}

bool assign_rule(Context& ctx, Dissection& dis, std::size_t kind) {
  auto rule = sample_rule(ctx, dis, kind);
  if (!rule) return false;
  try {
    assign_half_open(dis, *rule);
  } catch (const NonGenericError&) {
    return false;
  }
  return true;
}

std::string partition_detail(const PartitionCheck& pc) {
  return std::to_string(pc.uncovered) + " uncovered, " + std::to_string(pc.multiply_covered) +
         " multiply covered, " + std::to_string(pc.stray) + " stray of " + std::to_string(pc.points);
}

void check_partition(Context& ctx, const Dissection& dis, std::size_t w, const std::string& what) {
  const auto pc = partition_check(dis);
  ctx.check(pc.ok(), w, [&] { return what + ": " + partition_detail(pc) + " under " + dis.rule->describe(); });
  const auto cc = count_certificate(dis);
  ctx.check(cc.ok(), w, [&] {
    return what + ": cells count " + std::to_string(cc.total) + ", target " + std::to_string(cc.expected) +
           " under " + dis.rule->describe();
  });
}

void suite_placing(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    const auto ps = ctx.family(d, 1, 6);
    const Polytope& p = ps[0];
    auto order = p.vertices();
    ctx.rng.shuffle(order);
    const auto dis = placing_triangulation(p, order);
    const auto vc = volume_certificate(dis);
    ctx.check(vc.ok(), weight(ps), [&] {
      return "cell volumes sum to " + to_string(vc.total) + ", target " + to_string(vc.expected) + " for " +
             describe(ps);
    });
    bool cells_ok = true;
    for (const auto& c : dis.cells) {
      cells_ok = cells_ok && c.cell.is_simplex() && c.cell.dim() == p.dim();
      for (const auto& v : c.cell.vertices()) {
        cells_ok = cells_ok && std::find(order.begin(), order.end(), v) != order.end();
      }
    }
    ctx.check(cells_ok, weight(ps), [&] { return "a cell is not a full simplex on vertices of " + describe(ps); });
  }
}

void suite_half_open_partition(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    const auto ps = ctx.family(d, 1, 6);
    if (ps[0].dim() < 1) continue;
    auto order = ps[0].vertices();
    ctx.rng.shuffle(order);
    auto dis = placing_triangulation(ps[0], order);
    if (!assign_rule(ctx, dis, t)) continue;
    check_partition(ctx, dis, weight(ps), "triangulation of " + describe(ps));
  }
}

void suite_cylinder_factorization(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto cell = ctx.cylinder(d, 1);
    if (!cell) continue;
    const auto& summands = cell->summands;
    const Point q = random_rational_point(ctx.rng, d, -2, 6, 7);
    HalfOpenPolytope whole;
    std::vector<HalfOpenPolytope> parts;
    try {
      whole = half_open_by_point(cell->cell, q);
      const auto qs = split_point(summands, q);
      for (std::size_t i = 0; i < summands.size(); ++i) parts.push_back(half_open_by_point(summands[i], qs[i]));
    } catch (const NonGenericError&) {
      continue;
    }
    std::vector<Point> probes = lattice_points(cell->cell);
    for (int k = 0; k < 10; ++k) probes.push_back(random_rational_point(ctx.rng, d, -1, 6, 4));
    for (const auto& x : probes) {
      const auto xs = split_point(summands, x);
      bool in_parts = true;
      for (std::size_t i = 0; i < parts.size(); ++i) in_parts = in_parts && parts[i].contains_point(xs[i]);
      const bool in_whole = whole.contains_point(x);
      ctx.check(in_whole == in_parts, weight(summands), [&] {
        return "x = " + to_string(x) + " is " + (in_whole ? "in" : "not in") +
               " the half-open sum from q = " + to_string(q) + " but " + (in_parts ? "is" : "is not") +
               " a sum of half-open summand points; summands " + describe(summands);
      });
    }
  }
}

void suite_boxcell(Context& ctx) {
  const std::size_t top = std::min<std::size_t>(ctx.opts.dim, 3);
  for (std::size_t d = 1; d <= top; ++d) {
    std::map<long, std::map<std::size_t, LatticeCount>> per_k;
    const std::string label = "d = " + std::to_string(d);
    for (long n = 1; n <= 4; ++n) {
      auto dis = boxcell_dissection(d, n);
      const std::string at = label + ", n = " + std::to_string(n);
      std::map<std::size_t, std::size_t> census;
      for (const auto& c : dis.cells) ++census[c.cylinder_order()];
      for (std::size_t k = 1; k <= d; ++k) {
        const Integer expected =
            binomial(n, static_cast<long>(k)) * binomial(static_cast<long>(d) - 1, static_cast<long>(k) - 1);
        ctx.check(Integer(census[k]) == expected, d, [&] {
          return at + ": " + std::to_string(census[k]) + " cells with " + std::to_string(k) +
                 " blocks, expected " + expected.str();
        });
      }
      check_partition(ctx, dis, d, "boxcell " + at);
      const auto cert = count_certificate(dis);
      const Integer direction_total = binomial(n + static_cast<long>(d) - 1, static_cast<long>(d));
      ctx.check(Integer(cert.total) == direction_total, d, [&] {
        return at + ": half-open total " + std::to_string(cert.total) + ", expected " + direction_total.str();
      });
      for (std::size_t i = 0; i < dis.cells.size(); ++i) per_k[n][dis.cells[i].cylinder_order()] += cert.cell_counts[i];

      Dissection closed = dis;
      if (!assign_rule(ctx, closed, 0)) continue;
      const auto cc = count_certificate(closed);
      const Integer closed_total = binomial(n + static_cast<long>(d), static_cast<long>(d));
      ctx.check(Integer(cc.total) == closed_total, d, [&] {
        return at + ": closed total " + std::to_string(cc.total) + ", expected " + closed_total.str();
      });
    }
    for (std::size_t k = 1; k <= d; ++k) {
      const auto zk = [&](long n) {
        return Rational(static_cast<long>(per_k[n][k])) / Rational(binomial(n, static_cast<long>(k)));
      };
      for (long n = static_cast<long>(k) + 1; n <= 4; ++n) {
        const Rational a = zk(static_cast<long>(k)), b = zk(n);
        ctx.check(a == b, d, [&] {
          return label + ": per-binomial count for k = " + std::to_string(k) + " is " + to_string(a) +
                 " at n = " + std::to_string(k) + " but " + to_string(b) + " at n = " + std::to_string(n);
        });
      }
    }
  }
}

void suite_staircase(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(2, 3);
    if (d < 2) break;
    const auto p = ctx.count_in(1, d - 1);
    const auto q = ctx.count_in(0, d - p);
    const Polytope s1 = random_lattice_simplex(ctx.rng, d, p, 3);
    const Polytope s2 = random_lattice_simplex(ctx.rng, d, q, 3);
    if (minkowski_sum(s1, s2).dim() != static_cast<int>(p + q)) continue;
    const std::vector<Polytope> ps{s1, s2};
    auto dis = staircase_dissection(s1, s2);
    const Integer expected = binomial(static_cast<long>(p + q), static_cast<long>(p));
    ctx.check(Integer(dis.cells.size()) == expected, weight(ps), [&] {
      return std::to_string(dis.cells.size()) + " cells, expected " + expected.str() + " for " + describe(ps);
    });
    const auto vc = volume_certificate(dis);
    ctx.check(vc.ok(), weight(ps), [&] {
      return "cell volumes sum to " + to_string(vc.total) + ", target " + to_string(vc.expected) + " for " +
             describe(ps);
    });
    bool same_hull = true;
    for (const auto& c : dis.cells) {
      same_hull = same_hull && c.cell.dim() == dis.target.dim();
      for (const auto& x : c.cell.vertices()) same_hull = same_hull && dis.target.in_affine_hull(x);
    }
    ctx.check(same_hull, weight(ps), [&] { return "a cell leaves the affine hull of the sum of " + describe(ps); });
    if (assign_rule(ctx, dis, t)) check_partition(ctx, dis, weight(ps), "staircase of " + describe(ps));
  }
}

void suite_chain(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(2, 3);
    if (d < 2) break;
    auto cyl = ctx.cylinder(d, 2);
    if (!cyl || cyl->cylinder_order() < 2) continue;
    Dissection dis{cyl->cell, chain_refinement(*cyl), {}};
    bool orders = true;
    for (const auto& c : dis.cells) orders = orders && c.exact() && c.cylinder_order() + 1 == cyl->cylinder_order();
    ctx.check(orders, weight(cyl->summands), [&] {
      return "refinement cells are not exact cylinders of one lower order for " + describe(cyl->summands);
    });
    if (assign_rule(ctx, dis, t)) check_partition(ctx, dis, weight(cyl->summands), "refinement of " + describe(cyl->summands));
  }
}

void suite_fine_mixed(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, 3), 3);
    std::optional<std::uint64_t> shuffle;
    if (ctx.rng.coin()) shuffle = static_cast<std::uint64_t>(ctx.rng.uniform(0, INT32_MAX));
    const auto md = fine_mixed_dissection(ps, shuffle);
    const auto vc = volume_certificate(md.dissection);
    ctx.check(vc.ok(), weight(ps), [&] {
      return "cell volumes sum to " + to_string(vc.total) + ", target " + to_string(vc.expected) + " for " +
             describe(ps);
    });
    for (int k = 0; k < 3; ++k) {
      std::vector<long> n(ps.size());
      for (auto& x : n) x = ctx.rng.uniform(0, 2);
      const auto counts = dilated_cell_counts(md, n, static_cast<std::uint64_t>(ctx.rng.uniform(0, INT32_MAX)));
      std::vector<Polytope> scaled_ps;
      for (std::size_t i = 0; i < ps.size(); ++i) scaled_ps.push_back(dilate(ps[i], n[i]));
      const auto expected = count_lattice_points(minkowski_sum(scaled_ps, d));
      ctx.check(counts.certificate.total == expected, weight(ps), [&] {
        std::string ns;
        for (auto x : n) ns += (ns.empty() ? "" : ",") + std::to_string(x);
        return "at n = (" + ns + ") cells count " + std::to_string(counts.certificate.total) +
               ", dilated sum has " + std::to_string(expected) + " points; " + describe(ps);
      });
    }
  }
}

void suite_difference(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto [ps, qs] = ctx.nested(d, ctx.count_in(1, 2));
    if (minkowski_sum(ps, d).dim() != minkowski_sum(qs, d).dim()) continue;
    const auto md = mixed_difference_dissection(ps, qs);
    std::vector<long> n(ps.size());
    for (auto& x : n) x = ctx.rng.uniform(1, 2);
    const auto c = difference_counts(md, n, static_cast<std::uint64_t>(ctx.rng.uniform(0, INT32_MAX)));
    ctx.check(c.ok(), weight(ps) + weight(qs), [&] {
      return "inner " + std::to_string(c.inner_total) + "/" + std::to_string(c.inner_expected) +
             ", difference " + std::to_string(c.difference_total) + "/" + std::to_string(c.difference_expected) +
             " for " + describe_nested(ps, qs);
    });
  }
}

// ---- positivity -----------------------------------------------------------

void suite_positivity_equivalence(Context& ctx) {
  const auto dvol = discrete_volume();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, d + 1), 4);
    const bool positive = decide_positive(ps).positive;
    const Rational value = cm(dvol, ps);
    ctx.check(positive == (value > 0), weight(ps), [&] {
      return std::string("decision ") + (positive ? "positive" : "zero") + " but cm(dvol) = " + to_string(value) +
             " for " + describe(ps);
    });
  }
}

void suite_cylinder_bound(Context& ctx) {
  const auto dvol = discrete_volume();
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto ps = ctx.family(d, ctx.count_in(1, d), 4);
    const Rational value = cm(dvol, ps);
    const Integer bound = cylinder_lower_bound(ps);
    ctx.check(value >= Rational(bound) && (value <= 0 || value >= 1), weight(ps), [&] {
      return "cm(dvol) = " + to_string(value) + " against cylinder bound " + bound.str() + " for " + describe(ps);
    });
  }
}

void suite_matroid(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto n = ctx.count_in(1, 10);
    const auto dim = ctx.count_in(1, 4);
    const auto blocks = ctx.count_in(1, 5);
    std::vector<std::vector<Rational>> vecs;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> v(dim);
      for (auto& x : v) x = ctx.rng.uniform(-1, 1);
      vecs.push_back(v);
      owner.push_back(ctx.count_in(0, blocks - 1));
    }
    const auto m1 = linear_matroid(vecs), m2 = partition_matroid(owner);
    for (std::size_t k = 0; k <= std::min<std::size_t>(n, dim); ++k) {
      const bool fast = matroid_intersection(m1, m2, k).has_value();
      const bool slow = reference::matroid_intersection(m1, m2, k).has_value();
      ctx.check(fast == slow, n, [&] {
        std::string s = "k = " + std::to_string(k) + ": augmenting paths say " + (fast ? "yes" : "no") +
                        ", exhaustive search says " + (slow ? "yes" : "no") + " for vectors";
        for (std::size_t i = 0; i < n; ++i) s += " " + to_string(vecs[i]) + "@" + std::to_string(owner[i]);
        return s;
      });
    }
  }
}

void suite_positivity_monotone(Context& ctx) {
  for (std::size_t t = 0; t < ctx.opts.trials; ++t) {
    const auto d = ctx.dim_in(1, 3);
    auto [ps, qs] = ctx.nested(d, ctx.count_in(1, d));
    const bool small = decide_positive(ps).positive, large = decide_positive(qs).positive;
    ctx.check(!small || large, weight(ps) + weight(qs),
              [&] { return "positive for P but not for Q: " + describe_nested(ps, qs); });
  }
}

using SuiteFn = void (*)(Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"hull", suite_hull},
      {"minkowski", suite_minkowski},
      {"lattice-count", suite_lattice_count},
      {"contract", suite_contract},
      {"symmetry", suite_symmetry},
      {"argument-additivity", suite_argument_additivity},
      {"vanishing", suite_vanishing},
      {"monotonicity", suite_monotonicity},
      {"vol-cm-monotone", suite_vol_monotone},
      {"bernstein", suite_bernstein},
      {"proportionality-2d", suite_proportionality},
      {"degree-bound", suite_degree_bound},
      {"reconstruction", suite_reconstruction},
      {"shift-identity", suite_shift_identity},
      {"recursion", suite_recursion},
      {"h-star", suite_h_star},
      {"weak-h-star", suite_weak_h_star},
      {"placing", suite_placing},
      {"half-open-partition", suite_half_open_partition},
      {"cylinder-factorization", suite_cylinder_factorization},
      {"boxcell", suite_boxcell},
      {"staircase", suite_staircase},
      {"chain", suite_chain},
      {"fine-mixed", suite_fine_mixed},
      {"difference", suite_difference},
      {"positivity-equivalence", suite_positivity_equivalence},
      {"cylinder-bound", suite_cylinder_bound},
      {"matroid", suite_matroid},
      {"positivity-monotone", suite_positivity_monotone},
  };
  return suites;
}

std::uint64_t suite_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::optional<std::string> canonical_suite_name(std::string_view name) {
  if (name == "cor-zero") return "vanishing";
  if (name == "bihan") return "monotonicity";
  for (const auto& n : suite_names()) {
    if (n == name) return n;
  }
  return std::nullopt;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& opts) {
  const auto canonical = canonical_suite_name(name);
  if (!canonical) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'; known suites: " + known);
  }
  if (opts.dim == 0) throw std::invalid_argument("dimension must be positive");
  SuiteResult result;
  result.name = *canonical;
  Context ctx{opts, Rng(suite_seed(opts.seed, *canonical)), result, std::nullopt};
  for (const auto& [n, fn] : registry()) {
    if (n == *canonical) fn(ctx);
  }
  if (result.checks == 0) result.note = "no applicable instances";
  return result;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const SuiteOptions& opts) {
  std::vector<std::string> todo;
  for (const auto& n : names) {
    if (n == "all") {
      todo.insert(todo.end(), suite_names().begin(), suite_names().end());
    } else {
      todo.push_back(n);
    }
  }
  std::vector<SuiteResult> out;
  for (const auto& n : todo) out.push_back(run_suite(n, opts));
  return out;
}

}  // namespace cmv
