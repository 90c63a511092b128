#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cmv/polytope.hpp"

namespace cmv {

/// Seeded generator. Uses its own bounded sampling instead of
/// std::uniform_int_distribution so streams are identical across standard
/// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

Point random_lattice_point(Rng& rng, std::size_t dim, std::int64_t lo, std::int64_t hi);

/// Rational point with coordinates in [lo, hi] and denominators <= max_den.
Point random_rational_point(Rng& rng, std::size_t dim, std::int64_t lo, std::int64_t hi,
                            std::int64_t max_den);

/// Hull of 1..max_points random points of [0, box]^dim.
Polytope random_lattice_polytope(Rng& rng, std::size_t dim, std::int64_t box,
                                 std::size_t max_points);

/// Hull of a random nonempty subset (at most max_points) of the lattice
/// points of q.
Polytope random_lattice_subpolytope(Rng& rng, const Polytope& q, std::size_t max_points);

/// Lattice simplex of the given dimension with vertices in [0, box]^dim.
Polytope random_lattice_simplex(Rng& rng, std::size_t dim, std::size_t simplex_dim,
                                std::int64_t box);

/// Every distinct polytope conv(S) for nonempty S in {0..side}^dim, sorted by
/// vertex list.
std::vector<Polytope> box_subpolytopes(std::size_t dim, std::int64_t side);

/// P = below cup above with below cap above = cut, all cut by normal . x = offset.
struct HyperplaneSplit {
  std::vector<Rational> normal;
  Rational offset;
  Polytope below, above, cut;
};

/// Splits p by a random hyperplane x_j = c or x_i +- x_j = c with integral c
/// meeting p. Returns nullopt if p is flat in that direction, or if
/// integral_pieces is set and some piece has a non-integral vertex.
std::optional<HyperplaneSplit> random_split(Rng& rng, const Polytope& p, bool integral_pieces);

}  // namespace cmv
