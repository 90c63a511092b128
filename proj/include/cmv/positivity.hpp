#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmv/polytope.hpp"

namespace cmv {

struct Segment {
  std::size_t owner = 0;  // index of the polytope it lies in
  Point start, end;
  std::vector<Integer> direction;  // primitive(end - start)
};

/// One segment per edge of every polytope.
std::vector<Segment> candidate_segments(std::span<const Polytope> polys);

/// Independence oracle on the ground set {0, ..., size - 1}.
struct Matroid {
  std::size_t size = 0;
  std::function<bool(const std::vector<std::size_t>&)> independent;
};

/// Subsets are independent iff their vectors are linearly independent over Q.
Matroid linear_matroid(std::vector<std::vector<Rational>> vectors);
/// Subsets are independent iff they use each block at most once.
Matroid partition_matroid(std::vector<std::size_t> block_of);

/// Largest common independent set, by shortest augmenting paths in the
/// exchange graph. Stops early once `target` elements are reached.
std::vector<std::size_t> max_common_independent(const Matroid& m1, const Matroid& m2,
                                                std::size_t target = SIZE_MAX);

/// A common independent set of size k, or nullopt.
std::optional<std::vector<std::size_t>> matroid_intersection(const Matroid& m1, const Matroid& m2,
                                                             std::size_t k);

namespace reference {
/// Exhaustive search over all k-subsets.
std::optional<std::vector<std::size_t>> matroid_intersection(const Matroid& m1, const Matroid& m2,
                                                             std::size_t k);
}  // namespace reference

struct PositivityDecision {
  bool positive = false;
  std::vector<Segment> witness;  // linearly independent, one per polytope
  std::string note;
};

/// Decides whether the discrete mixed volume of the family is positive, i.e.
/// whether there are linearly independent segments S_i in P_i. Requires
/// lattice polytopes in a common R^d; r > d is always negative.
PositivityDecision decide_positive(std::span<const Polytope> polys, std::size_t ambient_dim);
PositivityDecision decide_positive(std::span<const Polytope> polys);

/// max prod dim S_i over simplices S_i spanned by vertices of P_i whose sum is
/// exact, or 0 if no choice with every dim S_i >= 1 exists. Exhaustive.
Integer cylinder_lower_bound(std::span<const Polytope> polys);

}  // namespace cmv
