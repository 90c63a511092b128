#pragma once

#include <stdexcept>
#include <string>

namespace cmv {

/// Malformed geometric input: dimension mismatch, empty polytope where a
/// nonempty one is required, point outside an affine hull.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A valuation or construction received a polytope outside its lattice,
/// e.g. lattice-point counting on non-integral vertices.
class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point or direction lies on a facet hyperplane it must avoid.
class NonGenericError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cmv
