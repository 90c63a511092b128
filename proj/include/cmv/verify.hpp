#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmv/valuation.hpp"

namespace cmv {

struct SuiteOptions {
  std::size_t dim = 3;  // instances are sampled in dimensions up to dim
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  /// Replaces the built-in valuations in the valuation-generic suites.
  std::optional<Valuation> valuation;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string counterexample;  // the smallest failing instance
  std::string note;
};

/// Names accepted by run_suite, in execution order.
const std::vector<std::string>& suite_names();
/// Resolves aliases ("cor-zero" -> "vanishing"); nullopt for unknown names.
std::optional<std::string> canonical_suite_name(std::string_view name);

/// Throws std::invalid_argument for unknown names.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts);
/// Runs every named suite, or all of them for {"all"}.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const SuiteOptions& opts);

/// Number of vertices. Not a valuation; a negative control for verify.
Valuation faulty_vertex_count();

}  // namespace cmv
