#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmv/linalg.hpp"
#include "cmv/rational.hpp"

namespace cmv {

enum class LatticeTag { Z, Q };

/// Facet inequality normal . x <= offset, taken inside aff(P): the normal lies
/// in the direction space of aff(P) and is a primitive integer vector.
struct Facet {
  std::vector<Rational> normal;
  Rational offset;
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices()
};

/// Affine equation normal . x = value satisfied on aff(P).
struct AffineEquation {
  std::vector<Rational> normal;  // primitive integer
  Rational value;
};

/// Convex polytope in V-representation with derived H-data.
///
/// Immutable and cheap to copy (shared state). Built only through
/// convex_hull() and the operations below, so the vertex list is always
/// irredundant and sorted lexicographically. A default-constructed or
/// Polytope::empty() value is the empty sentinel; geometric operations reject
/// it and valuations map it to zero.
class Polytope {
 public:
  Polytope() = default;
  static Polytope empty(std::size_t ambient_dim);

  bool is_empty() const { return !data_ || data_->vertices.empty(); }
  std::size_t ambient_dim() const { return data_ ? data_->ambient : 0; }
  /// -1 for the empty polytope.
  int dim() const { return is_empty() ? -1 : static_cast<int>(data_->dim); }
  LatticeTag lattice() const { return data_ ? data_->tag : LatticeTag::Z; }
  bool has_integral_vertices() const;

  const std::vector<Point>& vertices() const;
  const std::vector<Facet>& facets() const;
  const std::vector<AffineEquation>& equations() const;
  /// RREF basis of the direction space of aff(P).
  const Matrix& directions() const;
  /// Full-dimensional Lebesgue volume in the ambient space (0 if dim < d).
  const Rational& volume() const;

  bool in_affine_hull(const Point& x) const;
  bool contains_point(const Point& x) const;
  bool in_relative_interior(const Point& x) const;
  bool is_simplex() const { return !is_empty() && vertices().size() == static_cast<std::size_t>(dim()) + 1; }

  friend bool operator==(const Polytope& a, const Polytope& b);

 private:
  struct Data {
    std::size_t ambient = 0;
    std::size_t dim = 0;
    LatticeTag tag = LatticeTag::Z;
    std::vector<Point> vertices;
    std::vector<Facet> facets;
    std::vector<AffineEquation> equations;
    Matrix directions;
    Rational volume;
  };
  explicit Polytope(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  const Data& data() const;

  std::shared_ptr<const Data> data_;

  friend Polytope convex_hull(std::span<const Point>, std::optional<LatticeTag>);
  friend Polytope dilate(const Polytope&, long);
  friend Polytope translate(const Polytope&, const Point&);
  friend Polytope with_lattice(const Polytope&, LatticeTag);
};

/// Convex hull of a nonempty point list. The lattice tag defaults to Z when
/// every hull vertex is integral; requesting Z for non-integral vertices
/// throws LatticeError.
Polytope convex_hull(std::span<const Point> points, std::optional<LatticeTag> tag = {});
Polytope convex_hull(std::initializer_list<Point> points);

std::vector<Facet> facets(const Polytope& p);

struct Face {
  Polytope polytope;
  int dim = 0;
  std::vector<std::size_t> vertices;  // indices into the parent's vertices
  std::vector<std::size_t> facets;    // indices of the parent facets containing it
};

struct FaceLattice {
  std::vector<Face> faces;  // every nonempty face, ordered by (dim, vertices)

  std::size_t count(int dim) const;
};

FaceLattice face_lattice(const Polytope& p);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope minkowski_sum(std::span<const Polytope> ps, std::size_t ambient_dim);
/// n * P; dilate(P, 0) is the point {0}.
Polytope dilate(const Polytope& p, long n);
Polytope translate(const Polytope& p, const Point& t);
Polytope with_lattice(const Polytope& p, LatticeTag tag);
/// The point polytope {0} in R^d.
Polytope origin(std::size_t ambient_dim);

/// Q subset of P.
bool contains(const Polytope& p, const Polytope& q);

Rational exact_volume(const Polytope& p);

/// P intersected with { normal . x <= bound }; empty sentinel when disjoint.
Polytope clip(const Polytope& p, const std::vector<Rational>& normal, const Rational& bound);
/// P intersected with the hyperplane { normal . x = bound }.
Polytope slice(const Polytope& p, const std::vector<Rational>& normal, const Rational& bound);

/// "conv{(..), ...}", or "empty".
std::string to_string(const Polytope& p);

}  // namespace cmv
