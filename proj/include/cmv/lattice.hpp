#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cmv/kernels.hpp"
#include "cmv/polytope.hpp"

namespace cmv {

/// A polytope with some facets removed. A point belongs to it iff it lies in
/// the base and strictly satisfies every removed facet inequality.
struct HalfOpenPolytope {
  Polytope base;
  std::vector<std::size_t> removed;  // sorted facet indices of base

  bool contains_point(const Point& x) const;
  bool is_closed() const { return removed.empty(); }
};

using LatticeCount = std::uint64_t;

/// Integer form of P (or of the half-open / relatively open P) for the scan
/// kernels. `strict` lists facets whose inequality must hold strictly.
kernels::IntegerSystem integer_system(const Polytope& p, const std::vector<std::size_t>& strict);

std::vector<Point> lattice_points(const Polytope& p, Execution exec = Execution::parallel);
LatticeCount count_lattice_points(const Polytope& p, Execution exec = Execution::parallel);

std::vector<Point> half_open_points(const HalfOpenPolytope& h,
                                    Execution exec = Execution::parallel);
LatticeCount count_half_open_points(const HalfOpenPolytope& h,
                                    Execution exec = Execution::parallel);

/// Integer points strictly inside every facet inequality, within aff(P).
std::vector<Point> relint_points(const Polytope& p, Execution exec = Execution::parallel);
LatticeCount count_relint_points(const Polytope& p, Execution exec = Execution::parallel);

/// phi(relint P) = sum over nonempty faces F of (-1)^(dim P - dim F) phi(F).
Rational euler_relint_value(const std::function<Rational(const Polytope&)>& phi,
                            const Polytope& p);

}  // namespace cmv
