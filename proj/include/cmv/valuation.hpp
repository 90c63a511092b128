#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmv/kernels.hpp"
#include "cmv/polytope.hpp"

namespace cmv {

enum class LatticeRequirement { Z, Q, any };

/// A map from polytopes to rationals, expected to be translation invariant and
/// finitely additive. Neither property is assumed; see check_valuation_contract.
class Valuation {
 public:
  using Function = std::function<Rational(const Polytope&)>;

  Valuation(std::string name, LatticeRequirement requirement, Function eval);

  const std::string& name() const { return name_; }
  LatticeRequirement lattice_requirement() const { return requirement_; }

  /// 0 on the empty polytope. Throws LatticeError if p is outside the domain.
  Rational operator()(const Polytope& p) const;
  void require_domain(const Polytope& p) const;

 private:
  std::string name_;
  LatticeRequirement requirement_;
  Function eval_;
};

/// Number of lattice points.
Valuation discrete_volume();
/// Lebesgue volume in the ambient space.
Valuation volume();
Valuation euler_characteristic();
/// (-1)^dim P times the number of lattice points in relint P.
Valuation interior_count();

/// dvol, vol, euler, interior.
std::vector<Valuation> builtin_valuations();
std::optional<Valuation> builtin_valuation(std::string_view name);

/// sum_k weight_k * phi_k, with the most restrictive lattice requirement.
Valuation linear_combination(std::string name,
                             const std::vector<std::pair<Rational, Valuation>>& terms);

/// P -> phi(P + Q).
Valuation shift_valuation(const Valuation& phi, const Polytope& q);

/// Evaluates phi on every polytope of the batch.
std::vector<Rational> evaluate_all(const Valuation& phi, std::span<const Polytope> ps,
                                   Execution exec = Execution::parallel);

/// P_I = sum_{i in I} P_i for every subset I (bit i of the index selects P_i);
/// entry 0 is {0}.
std::vector<Polytope> subset_sums(std::span<const Polytope> polys, std::size_t ambient_dim);

struct CmTerm {
  std::uint32_t subset = 0;
  int sign = 1;
  Rational value;  // phi(P_I)
};

struct CmResult {
  Rational value;
  std::vector<CmTerm> terms;  // ordered by subset
};

/// Checks the common preconditions of the mixed operations and returns d.
std::size_t validate_family(const Valuation& phi, std::span<const Polytope> polys,
                            std::size_t ambient_dim);

CmResult cm_table(const Valuation& phi, std::span<const Polytope> polys, std::size_t ambient_dim,
                  Execution exec = Execution::parallel);
/// sum_{I} (-1)^(r - |I|) phi(P_I). An empty family needs ambient_dim.
Rational cm(const Valuation& phi, std::span<const Polytope> polys, std::size_t ambient_dim);
Rational cm(const Valuation& phi, std::span<const Polytope> polys);

/// cm of the family in which P_i is repeated alpha_i times.
Rational cm_multi(const Valuation& phi, std::span<const Polytope> polys,
                  std::span<const long> alpha);

/// Binomial-basis polynomial n -> sum_alpha c_alpha prod binom(n_i, alpha_i).
struct MixedPolynomial {
  std::size_t arity = 0;
  std::map<std::vector<long>, Rational> coefficients;

  Rational coefficient(const std::vector<long>& alpha) const;
  Rational evaluate(std::span<const long> n) const;
};

struct MixedPolynomialFit {
  MixedPolynomial polynomial;
  long degree_bound = 0;                 // dim of the sum; grid is {0..D}^r
  std::map<std::vector<long>, Rational> grid;
  bool grid_reproduced = false;
  std::vector<long> probe;               // out-of-grid point
  Rational probe_value;                  // phi at the probe
  Rational probe_prediction;             // polynomial at the probe
  bool probe_matches = false;

  bool ok() const { return grid_reproduced && probe_matches; }
};

/// phi(n_1 P_1 + ... + n_r P_r) for the given multiplicities.
Rational evaluate_dilated_sum(const Valuation& phi, std::span<const Polytope> polys,
                              std::span<const long> n, std::size_t ambient_dim);

MixedPolynomialFit fit_mixed_polynomial(const Valuation& phi, std::span<const Polytope> polys,
                                        std::size_t ambient_dim,
                                        Execution exec = Execution::parallel);
MixedPolynomial mixed_polynomial(const Valuation& phi, std::span<const Polytope> polys,
                                 std::size_t ambient_dim);

/// cm(P1..Pr) == cm(P1+P2, P3..) - cm(P1, P3..) - cm(P2, P3..). Needs r >= 2.
bool charac_recursion_check(const Valuation& phi, std::span<const Polytope> polys);

struct HStarVector {
  std::vector<Rational> entries;  // h_0..h_r

  /// sum_i h_i binom(n + r - i, r).
  Rational evaluate(long n) const;
};

struct HStarFit {
  HStarVector vector;
  Rational check_value;       // phi((r+1) P)
  Rational check_prediction;  // HStarVector::evaluate(r+1)
  bool ok() const { return check_value == check_prediction; }
};

HStarFit fit_h_star_vector(const Valuation& phi, const Polytope& p);
HStarVector h_star_vector(const Valuation& phi, const Polytope& p);

struct WeakHStarWitness {
  Polytope simplex;
  Polytope facet;  // empty when the simplex is a point
  Rational value;  // phi(relint S) + phi(relint F)
};

struct WeakHStarReport {
  std::size_t trials = 0;
  std::vector<WeakHStarWitness> violations;
  bool passed() const { return violations.empty(); }
};

/// Samples lattice simplices S (all dimensions 0..dim) with a facet F and
/// records every S with phi(relint S) + phi(relint F) < 0.
WeakHStarReport weak_hstar_monotone_check(const Valuation& phi, std::size_t trials,
                                          std::size_t dim, std::uint64_t seed);

struct ContractViolation {
  std::string property;  // "translation" or "additivity"
  std::vector<Polytope> polytopes;
  std::string detail;
};

struct ContractReport {
  std::size_t trials = 0;
  std::size_t additivity_checks = 0;
  std::vector<ContractViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Seeded conformance run: phi(empty) = 0, translation invariance by lattice
/// vectors, and phi(P) = phi(P') + phi(P'') - phi(P' cap P'') for splits of
/// random polytopes by hyperplanes x_j = c and x_i +- x_j = c.
ContractReport check_valuation_contract(const Valuation& phi, std::size_t trials, std::size_t dim,
                                        std::uint64_t seed);

}  // namespace cmv
