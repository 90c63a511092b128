#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cmv/dissection.hpp"

namespace cmv {

struct CayleyPolytope {
  std::vector<Polytope> factors;
  Polytope embedding;            // conv of the P_i x {e_i} in R^(d+r)
  std::vector<Point> points;     // lifted vertices, factor by factor
  std::vector<std::size_t> labels;
};

/// (x, e_label) in R^(d+r).
Point cayley_lift(const Point& x, std::size_t label, std::size_t r);

CayleyPolytope cayley_polytope(const std::vector<Polytope>& polys);

/// A dissection of P_1 + ... + P_r whose cells are exact sums R_1 + ... + R_r
/// of simplices R_i with vertices among those of P_i.
struct MixedDissection {
  std::vector<Polytope> factors;
  Dissection dissection;
};

/// Places the Cayley points (in input order, or shuffled by `shuffle_seed`)
/// and pulls every maximal simplex back to a mixed cell by grouping its
/// vertices by label.
MixedDissection fine_mixed_dissection(const std::vector<Polytope>& polys,
                                      std::optional<std::uint64_t> shuffle_seed = {});

/// The fine mixed dissection of sum_{i : n_i > 0} P_i induced on the
/// corresponding face of the Cayley polytope, without scaling.
std::vector<MixedCell> restrict_to_support(const MixedDissection& md, std::span<const long> n);

struct DilatedCounts {
  std::vector<long> n;
  Dissection dissection;  // scaled cells, half-open from a generic interior point
  CountCertificate certificate;
};

/// Scales every cell summand-wise by n, makes the cells half-open from one
/// generic point of the interior of n_1 P_1 + ... + n_r P_r, and counts.
DilatedCounts dilated_cell_counts(const MixedDissection& md, std::span<const long> n,
                                  std::uint64_t seed = 42);

struct MixedDifference {
  std::vector<Polytope> inner;  // P_i
  std::vector<Polytope> outer;  // Q_i
  Dissection dissection;        // of sum Q_i
  std::size_t inner_cells = 0;  // the first cells dissect sum P_i
};

/// Places the Cayley points of P first and the remaining vertices of Q after
/// them, so the cells spanned by points of P alone dissect sum P_i. Needs
/// P_i in Q_i and dim sum P = dim sum Q.
MixedDifference mixed_difference_dissection(const std::vector<Polytope>& inner,
                                            const std::vector<Polytope>& outer);

struct DifferenceCounts {
  std::vector<long> n;
  Point q;
  std::vector<MixedCell> difference_cells;  // scaled and half-open
  LatticeCount inner_total = 0, inner_expected = 0;
  LatticeCount difference_total = 0, difference_expected = 0;
  bool ok() const {
    return inner_total == inner_expected && difference_total == difference_expected;
  }
};

/// Requires every n_i > 0.
DifferenceCounts difference_counts(const MixedDifference& md, std::span<const long> n,
                                   std::uint64_t seed = 42);

}  // namespace cmv
