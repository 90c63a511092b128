#include "cmv/positivity.hpp"

#include <algorithm>
#include <deque>

#include "cmv/errors.hpp"
#include "cmv/linalg.hpp"

namespace cmv {

std::vector<Segment> candidate_segments(std::span<const Polytope> polys) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& p = polys[i];
    if (p.is_empty() || p.dim() < 1) continue;
    if (p.dim() == 1) {
      const auto& v = p.vertices();
      out.push_back({i, v[0], v[1], primitive_direction(v[1] - v[0])});
      continue;
    }
    const auto fl = face_lattice(p);
    for (const auto& f : fl.faces) {
      if (f.dim != 1) continue;
      const Point& a = p.vertices()[f.vertices[0]];
      const Point& b = p.vertices()[f.vertices[1]];
      out.push_back({i, a, b, primitive_direction(b - a)});
    }
  }
  return out;
}

Matroid linear_matroid(std::vector<std::vector<Rational>> vectors) {
  const std::size_t n = vectors.size();
  return {n, [vectors = std::move(vectors)](const std::vector<std::size_t>& s) {
            Matrix m;
            for (auto i : s) m.push_back(vectors.at(i));
            return rank(std::move(m)) == s.size();
          }};
}

Matroid partition_matroid(std::vector<std::size_t> block_of) {
  const std::size_t n = block_of.size();
  return {n, [block_of = std::move(block_of)](const std::vector<std::size_t>& s) {
            std::vector<std::size_t> used;
            for (auto i : s) used.push_back(block_of.at(i));
            std::sort(used.begin(), used.end());
            return std::adjacent_find(used.begin(), used.end()) == used.end();
          }};
}

std::vector<std::size_t> max_common_independent(const Matroid& m1, const Matroid& m2,
                                                std::size_t target) {
  if (m1.size != m2.size) throw std::invalid_argument("matroids on different ground sets");
  const std::size_t n = m1.size;
  std::vector<bool> in(n, false);
  std::vector<std::size_t> current;

  while (current.size() < target) {
    auto with = [&](std::size_t y) {
      auto s = current;
      s.push_back(y);
      return s;
    };
    auto exchange = [&](std::size_t x, std::size_t y) {
      std::vector<std::size_t> s;
      for (auto c : current) {
        if (c != x) s.push_back(c);
      }
      s.push_back(y);
      return s;
    };
    // Exchange graph: x -> y if I - x + y in M1, y -> x if I - x + y in M2.
    // Paths run from X1 = {y : I + y in M1} to X2 = {y : I + y in M2}.
    std::vector<bool> sink(n, false);
    std::vector<long> parent(n, -2);
    std::deque<std::size_t> queue;
    for (std::size_t y = 0; y < n; ++y) {
      if (in[y]) continue;
      if (m2.independent(with(y))) sink[y] = true;
      if (m1.independent(with(y))) {
        parent[y] = -1;
        queue.push_back(y);
      }
    }
    long end = -1;
    while (!queue.empty() && end < 0) {
      const std::size_t v = queue.front();
      queue.pop_front();
      if (!in[v] && sink[v]) {
        end = static_cast<long>(v);
        break;
      }
      for (std::size_t w = 0; w < n; ++w) {
        if (parent[w] != -2) continue;
        bool arc = false;
        if (in[v] && !in[w]) arc = m1.independent(exchange(v, w));
        if (!in[v] && in[w]) arc = m2.independent(exchange(w, v));
        if (arc) {
          parent[w] = static_cast<long>(v);
          queue.push_back(w);
        }
      }
    }
    if (end < 0) break;
    for (long v = end; v >= 0; v = parent[static_cast<std::size_t>(v)]) {
      in[static_cast<std::size_t>(v)] = !in[static_cast<std::size_t>(v)];
    }
    current.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (in[i]) current.push_back(i);
    }
  }
  return current;
}

std::optional<std::vector<std::size_t>> matroid_intersection(const Matroid& m1, const Matroid& m2,
                                                             std::size_t k) {
  auto best = max_common_independent(m1, m2, k);
  if (best.size() < k) return std::nullopt;
  return best;
}

namespace reference {

std::optional<std::vector<std::size_t>> matroid_intersection(const Matroid& m1, const Matroid& m2,
                                                             std::size_t k) {
  if (m1.size != m2.size) throw std::invalid_argument("matroids on different ground sets");
  const std::size_t n = m1.size;
  if (k > n) return std::nullopt;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    if (m1.independent(s) && m2.independent(s)) return s;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

}  // namespace reference

namespace {

void check_lattice_family(std::span<const Polytope> polys, std::size_t d) {
  for (const auto& p : polys) {
    if (p.is_empty()) throw GeometryError("positivity needs nonempty polytopes");
    if (p.ambient_dim() != d) throw GeometryError("ambient dimensions differ");
    if (!p.has_integral_vertices()) throw LatticeError("positivity needs lattice polytopes");
  }
}

}  // namespace

PositivityDecision decide_positive(std::span<const Polytope> polys, std::size_t ambient_dim) {
  check_lattice_family(polys, ambient_dim);
  PositivityDecision out;
  const std::size_t r = polys.size();
  if (r > ambient_dim) {
    out.note = "more polytopes than dimensions; the mixed valuation vanishes";
    return out;
  }
  const auto segments = candidate_segments(polys);
  std::vector<std::vector<Rational>> dirs;
  std::vector<std::size_t> owners;
  for (const auto& s : segments) {
    dirs.emplace_back(s.direction.begin(), s.direction.end());
    owners.push_back(s.owner);
  }
  auto common = matroid_intersection(linear_matroid(std::move(dirs)),
                                     partition_matroid(std::move(owners)), r);
  if (!common) {
    out.note = "no linearly independent segments, one per polytope";
    return out;
  }
  out.positive = true;
  for (auto i : *common) out.witness.push_back(segments[i]);
  std::sort(out.witness.begin(), out.witness.end(),
            [](const Segment& a, const Segment& b) { return a.owner < b.owner; });
  return out;
}

PositivityDecision decide_positive(std::span<const Polytope> polys) {
  if (polys.empty()) throw GeometryError("an empty family needs an explicit ambient dimension");
  return decide_positive(polys, polys[0].ambient_dim());
}

namespace {

struct CylinderSearch {
  std::span<const Polytope> polys;
  std::size_t d = 0;
  Integer best = 0;

  // Edge vectors from the first vertex of every affinely independent vertex
  // subset of P_i with between 2 and max_points points.
  static void subsets(const std::vector<Point>& verts, std::size_t max_points,
                      std::vector<Matrix>& out) {
    std::vector<std::size_t> idx;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (idx.size() >= 2) {
        Matrix dirs;
        for (std::size_t k = 1; k < idx.size(); ++k) dirs.push_back(verts[idx[k]] - verts[idx[0]]);
        if (rank(dirs) != dirs.size()) return;
        out.push_back(std::move(dirs));
      }
      if (idx.size() == max_points) return;
      for (std::size_t i = start; i < verts.size(); ++i) {
        idx.push_back(i);
        self(self, i + 1);
        idx.pop_back();
      }
    };
    rec(rec, 0);
  }

  void run() {
    const std::size_t r = polys.size();
    if (r > d) return;
    std::vector<std::vector<Matrix>> choices(r);
    for (std::size_t i = 0; i < r; ++i) {
      subsets(polys[i].vertices(), d - (r - 1) + 1, choices[i]);
      if (choices[i].empty()) return;
    }
    Matrix acc;
    auto rec = [&](auto&& self, std::size_t i, const Integer& prod) -> void {
      if (i == r) {
        best = std::max(best, prod);
        return;
      }
      const std::size_t used = acc.size();
      const std::size_t room = d - used - (r - i - 1);
      for (const auto& dirs : choices[i]) {
        if (dirs.size() > room) continue;
        Matrix trial = acc;
        trial.insert(trial.end(), dirs.begin(), dirs.end());
        if (rank(trial) != trial.size()) continue;
        acc.swap(trial);
        self(self, i + 1, prod * static_cast<long>(dirs.size()));
        acc.swap(trial);
      }
    };
    rec(rec, 0, Integer(1));
  }
};

}  // namespace

Integer cylinder_lower_bound(std::span<const Polytope> polys) {
  if (polys.empty()) return 1;
  const std::size_t d = polys[0].ambient_dim();
  check_lattice_family(polys, d);
  CylinderSearch search{polys, d};
  search.run();
  return search.best;
}

}  // namespace cmv
