#include "cmv/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include <omp.h>

namespace cmv::kernels {

namespace {

constexpr std::int64_t kSafeMagnitude = std::int64_t{1} << 62;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

bool satisfies(const IntegerSystem& sys, const IntPoint& x) {
  for (const auto& row : sys.equalities) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < sys.dim; ++j) s += row.a[j] * x[j];
    if (s != row.bound) return false;
  }
  for (const auto& row : sys.inequalities) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < sys.dim; ++j) s += row.a[j] * x[j];
    if (s > row.bound) return false;
  }
  return true;
}

bool box_empty(const IntegerSystem& sys) {
  if (sys.infeasible) return true;
  for (std::size_t j = 0; j < sys.dim; ++j) {
    if (sys.lo[j] > sys.hi[j]) return true;
  }
  return false;
}

template <typename Visit>
void for_each_box_point(const IntegerSystem& sys, Visit&& visit) {
  if (box_empty(sys)) return;
  IntPoint x = sys.lo;
  while (true) {
    visit(x);
    std::size_t j = sys.dim;
    while (j > 0) {
      --j;
      if (x[j] < sys.hi[j]) {
        ++x[j];
        break;
      }
      x[j] = sys.lo[j];
      if (j == 0) return;
    }
    if (sys.dim == 0) return;
  }
}

struct LineGeometry {
  std::size_t outer_dims = 0;
  std::vector<std::int64_t> extent;  // per outer coordinate
  std::uint64_t lines = 0;
};

LineGeometry line_geometry(const IntegerSystem& sys) {
  LineGeometry g;
  g.outer_dims = sys.dim - 1;
  g.lines = 1;
  for (std::size_t j = 0; j < g.outer_dims; ++j) {
    g.extent.push_back(sys.hi[j] - sys.lo[j] + 1);
    g.lines *= static_cast<std::uint64_t>(g.extent.back());
  }
  return g;
}

// Decodes a line index to its outer coordinates and solves the last one.
// Returns false when the line holds no feasible point.
bool solve_line(const IntegerSystem& sys, const LineGeometry& g, std::uint64_t line,
                IntPoint& x, std::int64_t& t_lo, std::int64_t& t_hi) {
  for (std::size_t j = g.outer_dims; j-- > 0;) {
    const auto e = static_cast<std::uint64_t>(g.extent[j]);
    x[j] = sys.lo[j] + static_cast<std::int64_t>(line % e);
    line /= e;
  }
  const std::size_t last = sys.dim - 1;
  t_lo = sys.lo[last];
  t_hi = sys.hi[last];
  for (const auto& row : sys.equalities) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < last; ++j) s += row.a[j] * x[j];
    const std::int64_t c = row.a[last];
    const std::int64_t r = row.bound - s;
    if (c == 0) {
      if (r != 0) return false;
    } else {
      if (r % c != 0) return false;
      const std::int64_t t = r / c;
      t_lo = std::max(t_lo, t);
      t_hi = std::min(t_hi, t);
    }
  }
  for (const auto& row : sys.inequalities) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < last; ++j) s += row.a[j] * x[j];
    const std::int64_t c = row.a[last];
    const std::int64_t r = row.bound - s;
    if (c == 0) {
      if (r < 0) return false;
    } else if (c > 0) {
      t_hi = std::min(t_hi, floor_div(r, c));
    } else {
      t_lo = std::max(t_lo, ceil_div(r, c));
    }
    if (t_lo > t_hi) return false;
  }
  return t_lo <= t_hi;
}

}  // namespace

void IntegerSystem::check_range() const {
  std::vector<std::int64_t> mag(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    mag[j] = std::max(std::llabs(lo[j]), std::llabs(hi[j]));
    if (mag[j] >= kSafeMagnitude) throw std::overflow_error("lattice scan box too large");
  }
  auto check_row = [&](const IntegerRow& row) {
    __int128 s = row.bound < 0 ? -static_cast<__int128>(row.bound) : row.bound;
    for (std::size_t j = 0; j < dim; ++j) {
      s += static_cast<__int128>(std::llabs(row.a[j])) * mag[j];
    }
    if (s >= kSafeMagnitude) throw std::overflow_error("lattice scan row may overflow");
  };
  for (const auto& r : inequalities) check_row(r);
  for (const auto& r : equalities) check_row(r);
}

std::uint64_t count_reference(const IntegerSystem& sys) {
  std::uint64_t n = 0;
  for_each_box_point(sys, [&](const IntPoint& x) {
    if (satisfies(sys, x)) ++n;
  });
  return n;
}

std::vector<IntPoint> collect_reference(const IntegerSystem& sys) {
  std::vector<IntPoint> out;
  for_each_box_point(sys, [&](const IntPoint& x) {
    if (satisfies(sys, x)) out.push_back(x);
  });
  return out;
}

std::uint64_t count_parallel(const IntegerSystem& sys) {
  if (box_empty(sys) || sys.dim == 0) return box_empty(sys) ? 0 : 1;
  const LineGeometry g = line_geometry(sys);
  std::uint64_t total = 0;
#pragma omp parallel
  {
    IntPoint x(sys.dim);
#pragma omp for reduction(+ : total) schedule(static)
    for (std::int64_t line = 0; line < static_cast<std::int64_t>(g.lines); ++line) {
      std::int64_t lo = 0, hi = -1;
      if (solve_line(sys, g, static_cast<std::uint64_t>(line), x, lo, hi)) {
        total += static_cast<std::uint64_t>(hi - lo + 1);
      }
    }
  }
  return total;
}

std::vector<IntPoint> collect_parallel(const IntegerSystem& sys) {
  if (box_empty(sys)) return {};
  if (sys.dim == 0) return {IntPoint{}};
  const LineGeometry g = line_geometry(sys);
  const auto lines = static_cast<std::int64_t>(g.lines);
  std::vector<std::int64_t> t_lo(g.lines), t_hi(g.lines);
#pragma omp parallel
  {
    IntPoint x(sys.dim);
#pragma omp for schedule(static)
    for (std::int64_t line = 0; line < lines; ++line) {
      std::int64_t lo = 0, hi = -1;
      if (!solve_line(sys, g, static_cast<std::uint64_t>(line), x, lo, hi)) {
        lo = 0;
        hi = -1;
      }
      t_lo[line] = lo;
      t_hi[line] = hi;
    }
  }
  std::vector<std::uint64_t> offset(g.lines + 1, 0);
  for (std::uint64_t i = 0; i < g.lines; ++i) {
    offset[i + 1] = offset[i] + static_cast<std::uint64_t>(t_hi[i] - t_lo[i] + 1);
  }
  std::vector<IntPoint> out(offset.back());
#pragma omp parallel
  {
    IntPoint x(sys.dim);
#pragma omp for schedule(static)
    for (std::int64_t line = 0; line < lines; ++line) {
      if (t_hi[line] < t_lo[line]) continue;
      std::int64_t lo = 0, hi = -1;
      solve_line(sys, g, static_cast<std::uint64_t>(line), x, lo, hi);
      std::uint64_t k = offset[line];
      for (std::int64_t t = lo; t <= hi; ++t) {
        x[sys.dim - 1] = t;
        out[k++] = x;
      }
    }
  }
  return out;
}

}  // namespace cmv::kernels
