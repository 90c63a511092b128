#include "cmv/valuation.hpp"

#include <algorithm>
#include <bit>
#include <exception>

#include "cmv/errors.hpp"
#include "cmv/lattice.hpp"
#include "cmv/random.hpp"

namespace cmv {

Valuation::Valuation(std::string name, LatticeRequirement requirement, Function eval)
    : name_(std::move(name)), requirement_(requirement), eval_(std::move(eval)) {}

void Valuation::require_domain(const Polytope& p) const {
  if (requirement_ == LatticeRequirement::Z && !p.is_empty() && !p.has_integral_vertices()) {
    throw LatticeError("valuation '" + name_ + "' needs a polytope with integral vertices");
  }
}

Rational Valuation::operator()(const Polytope& p) const {
  if (p.is_empty()) return Rational(0);
  require_domain(p);
  return eval_(p);
}

Valuation discrete_volume() {
  return {"dvol", LatticeRequirement::Z,
          [](const Polytope& p) { return Rational(count_lattice_points(p)); }};
}

Valuation volume() {
  return {"vol", LatticeRequirement::any, [](const Polytope& p) { return exact_volume(p); }};
}

Valuation euler_characteristic() {
  return {"euler", LatticeRequirement::any, [](const Polytope&) { return Rational(1); }};
}

Valuation interior_count() {
  return {"interior", LatticeRequirement::Z, [](const Polytope& p) {
            Rational n(count_relint_points(p));
            return p.dim() % 2 == 0 ? n : Rational(-n);
          }};
}

std::vector<Valuation> builtin_valuations() {
  return {discrete_volume(), volume(), euler_characteristic(), interior_count()};
}

std::optional<Valuation> builtin_valuation(std::string_view name) {
  for (auto& v : builtin_valuations()) {
    if (v.name() == name) return v;
  }
  return std::nullopt;
}

Valuation linear_combination(std::string name,
                             const std::vector<std::pair<Rational, Valuation>>& terms) {
  LatticeRequirement req = LatticeRequirement::any;
  for (const auto& [w, v] : terms) {
    if (v.lattice_requirement() == LatticeRequirement::Z) req = LatticeRequirement::Z;
  }
  return {std::move(name), req, [terms](const Polytope& p) {
            Rational s = 0;
            for (const auto& [w, v] : terms) s += w * v(p);
            return s;
          }};
}

Valuation shift_valuation(const Valuation& phi, const Polytope& q) {
  if (q.is_empty()) throw GeometryError("shift by the empty polytope");
  return {phi.name() + "^{+Q}", phi.lattice_requirement(),
          [phi, q](const Polytope& p) { return phi(minkowski_sum(p, q)); }};
}

std::vector<Rational> evaluate_all(const Valuation& phi, std::span<const Polytope> ps,
                                   Execution exec) {
  std::vector<Rational> out(ps.size());
  if (exec == Execution::reference) {
    for (std::size_t i = 0; i < ps.size(); ++i) out[i] = phi(ps[i]);
    return out;
  }
  std::exception_ptr error;
  const auto n = static_cast<std::int64_t>(ps.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = phi(ps[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(cmv_evaluate_all)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<Polytope> subset_sums(std::span<const Polytope> polys, std::size_t ambient_dim) {
  if (polys.size() > 20) throw std::invalid_argument("too many polytopes for subset sums");
  const std::size_t n = std::size_t{1} << polys.size();
  std::vector<Polytope> sums(n);
  sums[0] = origin(ambient_dim);
  for (std::size_t mask = 1; mask < n; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::size_t rest = mask & (mask - 1);
    sums[mask] = rest == 0 ? polys[low] : minkowski_sum(sums[rest], polys[low]);
  }
  return sums;
}

std::size_t validate_family(const Valuation& phi, std::span<const Polytope> polys,
                            std::size_t ambient_dim) {
  for (const auto& p : polys) {
    if (p.is_empty()) throw GeometryError("mixed valuations need nonempty polytopes");
    if (p.ambient_dim() != ambient_dim) throw GeometryError("ambient dimensions differ");
    phi.require_domain(p);
  }
  return ambient_dim;
}

CmResult cm_table(const Valuation& phi, std::span<const Polytope> polys, std::size_t ambient_dim,
                  Execution exec) {
  validate_family(phi, polys, ambient_dim);
  const auto sums = subset_sums(polys, ambient_dim);
  const auto values = evaluate_all(phi, sums, exec);
  const int r = static_cast<int>(polys.size());
  CmResult res;
  res.value = 0;
  for (std::size_t mask = 0; mask < sums.size(); ++mask) {
    const int sign = (r - std::popcount(mask)) % 2 == 0 ? 1 : -1;
    res.terms.push_back({static_cast<std::uint32_t>(mask), sign, values[mask]});
    if (sign > 0) {
      res.value += values[mask];
    } else {
      res.value -= values[mask];
    }
  }
  return res;
}

Rational cm(const Valuation& phi, std::span<const Polytope> polys, std::size_t ambient_dim) {
  return cm_table(phi, polys, ambient_dim).value;
}

Rational cm(const Valuation& phi, std::span<const Polytope> polys) {
  if (polys.empty()) throw GeometryError("an empty family needs an explicit ambient dimension");
  return cm(phi, polys, polys[0].ambient_dim());
}

Rational cm_multi(const Valuation& phi, std::span<const Polytope> polys,
                  std::span<const long> alpha) {
  if (alpha.size() != polys.size()) throw std::invalid_argument("multiplicity arity mismatch");
  if (polys.empty()) throw GeometryError("an empty family needs an explicit ambient dimension");
  std::vector<Polytope> expanded;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (alpha[i] < 0) throw std::invalid_argument("negative multiplicity");
    for (long k = 0; k < alpha[i]; ++k) expanded.push_back(polys[i]);
  }
  return cm(phi, expanded, polys[0].ambient_dim());
}

Rational MixedPolynomial::coefficient(const std::vector<long>& alpha) const {
  auto it = coefficients.find(alpha);
  return it == coefficients.end() ? Rational(0) : it->second;
}

Rational MixedPolynomial::evaluate(std::span<const long> n) const {
  if (n.size() != arity) throw std::invalid_argument("evaluation point has wrong arity");
  Rational s = 0;
  for (const auto& [alpha, c] : coefficients) {
    if (c == 0) continue;
    Integer prod = 1;
    for (std::size_t i = 0; i < arity && prod != 0; ++i) prod *= binomial(n[i], alpha[i]);
    s += c * prod;
  }
  return s;
}

namespace {

// Every vector in {0..hi}^r in lexicographic order.
std::vector<std::vector<long>> box_vectors(std::size_t r, long hi) {
  std::vector<std::vector<long>> out;
  std::vector<long> v(r, 0);
  while (true) {
    out.push_back(v);
    std::size_t j = r;
    while (j > 0 && v[j - 1] == hi) v[--j] = 0;
    if (j == 0) break;
    ++v[j - 1];
  }
  return out;
}

Polytope dilated_sum(std::span<const Polytope> polys, std::span<const long> n,
                     std::size_t ambient_dim) {
  std::vector<Polytope> parts;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (n[i] != 0) parts.push_back(dilate(polys[i], n[i]));
  }
  if (parts.empty()) return origin(ambient_dim);
  return minkowski_sum(parts, ambient_dim);
}

long total(const std::vector<long>& v) {
  long s = 0;
  for (auto x : v) s += x;
  return s;
}

}  // namespace

Rational evaluate_dilated_sum(const Valuation& phi, std::span<const Polytope> polys,
                              std::span<const long> n, std::size_t ambient_dim) {
  validate_family(phi, polys, ambient_dim);
  return phi(dilated_sum(polys, n, ambient_dim));
}

MixedPolynomialFit fit_mixed_polynomial(const Valuation& phi, std::span<const Polytope> polys,
                                        std::size_t ambient_dim, Execution exec) {
  validate_family(phi, polys, ambient_dim);
  const std::size_t r = polys.size();
  MixedPolynomialFit fit;
  fit.polynomial.arity = r;
  std::vector<long> ones(r, 1);
  fit.degree_bound = dilated_sum(polys, ones, ambient_dim).dim();
  const long D = fit.degree_bound;

  const auto grid = box_vectors(r, D);
  std::vector<Polytope> grid_polys;
  grid_polys.reserve(grid.size());
  for (const auto& n : grid) grid_polys.push_back(dilated_sum(polys, n, ambient_dim));
  const auto values = evaluate_all(phi, grid_polys, exec);
  for (std::size_t k = 0; k < grid.size(); ++k) fit.grid[grid[k]] = values[k];

  // c_alpha = sum_{beta <= alpha} (-1)^{|alpha|-|beta|} prod binom(alpha_i, beta_i) f(beta)
  for (const auto& alpha : grid) {
    if (total(alpha) > D) continue;
    Rational c = 0;
    for (const auto& [beta, f] : fit.grid) {
      bool below = true;
      Integer w = 1;
      for (std::size_t i = 0; i < r && below; ++i) {
        below = beta[i] <= alpha[i];
        if (below) w *= binomial(alpha[i], beta[i]);
      }
      if (!below) continue;
      if ((total(alpha) - total(beta)) % 2 != 0) w = -w;
      c += w * f;
    }
    fit.polynomial.coefficients[alpha] = c;
  }

  fit.grid_reproduced = true;
  for (const auto& [n, f] : fit.grid) {
    if (fit.polynomial.evaluate(n) != f) fit.grid_reproduced = false;
  }
  if (r == 0) {
    fit.probe_value = fit.grid.begin()->second;
  } else {
    fit.probe.assign(r, D + 1);
    fit.probe_value = phi(dilated_sum(polys, fit.probe, ambient_dim));
  }
  fit.probe_prediction = fit.polynomial.evaluate(fit.probe);
  fit.probe_matches = fit.probe_prediction == fit.probe_value;
  return fit;
}

MixedPolynomial mixed_polynomial(const Valuation& phi, std::span<const Polytope> polys,
                                 std::size_t ambient_dim) {
  return fit_mixed_polynomial(phi, polys, ambient_dim).polynomial;
}

bool charac_recursion_check(const Valuation& phi, std::span<const Polytope> polys) {
  if (polys.size() < 2) throw std::invalid_argument("the recursion needs at least two polytopes");
  const std::size_t d = polys[0].ambient_dim();
  validate_family(phi, polys, d);
  std::vector<Polytope> rest(polys.begin() + 2, polys.end());
  auto with = [&](const Polytope& first) {
    std::vector<Polytope> v{first};
    v.insert(v.end(), rest.begin(), rest.end());
    return cm(phi, v, d);
  };
  return cm(phi, polys, d) ==
         with(minkowski_sum(polys[0], polys[1])) - with(polys[0]) - with(polys[1]);
}

Rational HStarVector::evaluate(long n) const {
  const long r = static_cast<long>(entries.size()) - 1;
  Rational s = 0;
  for (long i = 0; i <= r; ++i) s += entries[static_cast<std::size_t>(i)] * binomial(n + r - i, r);
  return s;
}

HStarFit fit_h_star_vector(const Valuation& phi, const Polytope& p) {
  if (p.is_empty()) throw GeometryError("h-vector of the empty polytope");
  const long r = p.dim();
  HStarFit fit;
  auto& h = fit.vector.entries;
  h.resize(static_cast<std::size_t>(r + 1));
  // Lower triangular system with unit diagonal: M[n][i] = binom(n + r - i, r).
  for (long n = 0; n <= r; ++n) {
    Rational v = phi(dilate(p, n));
    for (long i = 0; i < n; ++i) v -= h[static_cast<std::size_t>(i)] * binomial(n + r - i, r);
    h[static_cast<std::size_t>(n)] = v;
  }
  fit.check_value = phi(dilate(p, r + 1));
  fit.check_prediction = fit.vector.evaluate(r + 1);
  return fit;
}

HStarVector h_star_vector(const Valuation& phi, const Polytope& p) {
  return fit_h_star_vector(phi, p).vector;
}

WeakHStarReport weak_hstar_monotone_check(const Valuation& phi, std::size_t trials,
                                          std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  Rng rng(seed);
  WeakHStarReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto sdim = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(dim)));
    Polytope s = random_lattice_simplex(rng, dim, sdim, 3);
    Polytope f = Polytope::empty(dim);
    Rational value = euler_relint_value(phi, s);
    if (sdim > 0) {
      std::vector<Point> rest = s.vertices();
      rest.erase(rest.begin() + rng.uniform(0, static_cast<std::int64_t>(rest.size()) - 1));
      f = convex_hull(rest);
      value += euler_relint_value(phi, f);
    }
    if (value < 0) report.violations.push_back({s, f, value});
  }
  return report;
}

ContractReport check_valuation_contract(const Valuation& phi, std::size_t trials, std::size_t dim,
                                        std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  Rng rng(seed);
  ContractReport report;
  report.trials = trials;
  const bool integral_only = phi.lattice_requirement() == LatticeRequirement::Z;
  if (phi(Polytope::empty(dim)) != 0) {
    report.violations.push_back({"empty", {}, "phi(empty) != 0"});
  }
  for (std::size_t t = 0; t < trials; ++t) {
    Polytope p = random_lattice_polytope(rng, dim, 3, 6);
    const Rational base = phi(p);

    std::vector<Point> shifts{random_lattice_point(rng, dim, -3, 3)};
    if (!integral_only) shifts.push_back(random_rational_point(rng, dim, -2, 2, 3));
    for (const auto& shift : shifts) {
      Polytope moved = translate(p, shift);
      const Rational v = phi(moved);
      if (v != base) {
        report.violations.push_back(
            {"translation", {p, moved},
             "phi(" + to_string(p) + ") = " + to_string(base) + " but phi(P + " + to_string(shift) +
                 ") = " + to_string(v)});
      }
    }

    for (int attempt = 0; attempt < 4; ++attempt) {
      auto split = random_split(rng, p, integral_only);
      if (!split) continue;
      ++report.additivity_checks;
      const Rational rhs = phi(split->below) + phi(split->above) - phi(split->cut);
      if (rhs != base) {
        report.violations.push_back(
            {"additivity", {p, split->below, split->above, split->cut},
             "phi(" + to_string(p) + ") = " + to_string(base) + " but the split by " +
                 to_string(split->normal) + " = " + to_string(split->offset) + " gives " +
                 to_string(rhs)});
      }
    }
  }
  return report;
}

}  // namespace cmv
