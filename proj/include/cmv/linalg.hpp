#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cmv/rational.hpp"

namespace cmv {

using Matrix = std::vector<std::vector<Rational>>;

// Exact Gaussian elimination over Q.

/// Reduces `m` to reduced row echelon form in place, drops zero rows and
/// returns the pivot column of each remaining row.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of { x : row . x = 0 for every row }, `cols` is the ambient width.
Matrix null_space(const Matrix& rows, std::size_t cols);

Rational determinant(Matrix m);

/// Unique solution of A x = b for square nonsingular A, nullopt otherwise.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

/// Some solution of A x = b (free variables set to zero), nullopt if the
/// system is inconsistent. `cols` is the number of unknowns.
std::optional<std::vector<Rational>> particular_solution(Matrix a, const std::vector<Rational>& b,
                                                         std::size_t cols);

/// Dimension of the affine hull of a nonempty point set.
std::size_t affine_dimension(std::span<const Point> points);

bool affinely_independent(std::span<const Point> points);

}  // namespace cmv
