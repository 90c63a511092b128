#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cmv {

/// Selects the naive serial reference or the OpenMP kernel. Both produce
/// identical results; the reference exists to test the parallel path.
enum class Execution { reference, parallel };

namespace kernels {

/// a . x <= bound (inequality) or a . x == bound (equality) over Z^d.
struct IntegerRow {
  std::vector<std::int64_t> a;
  std::int64_t bound = 0;
};

/// Integer points of a bounded system, scanned over the box [lo, hi].
struct IntegerSystem {
  std::size_t dim = 0;
  std::vector<std::int64_t> lo, hi;
  std::vector<IntegerRow> inequalities;
  std::vector<IntegerRow> equalities;
  bool infeasible = false;

  /// Throws std::overflow_error if a row value could leave int64 over the box.
  void check_range() const;
};

using IntPoint = std::vector<std::int64_t>;

/// Tests every box point against every row.
std::uint64_t count_reference(const IntegerSystem& sys);
std::vector<IntPoint> collect_reference(const IntegerSystem& sys);

/// Solves each line of the box along the last coordinate in closed form;
/// lines are distributed over OpenMP threads. Output is lexicographic.
std::uint64_t count_parallel(const IntegerSystem& sys);
std::vector<IntPoint> collect_parallel(const IntegerSystem& sys);

}  // namespace kernels
}  // namespace cmv
