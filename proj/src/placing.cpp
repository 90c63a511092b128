#include "cmv/placing.hpp"

#include <algorithm>
#include <map>

#include "cmv/errors.hpp"

namespace cmv {

namespace {

using FaceKey = std::vector<std::size_t>;

BoundaryFace make_face(const PointTriangulation& t, FaceKey pts, std::size_t opposite) {
  const std::size_t k = t.dim;
  Matrix rows;
  rows.reserve(pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(t.local[pts[i]] - t.local[pts[0]]);
  Matrix ns = null_space(rows, k);
  // Faces of a simplex are affinely independent, so the complement is a line.
  std::vector<Rational> n = std::move(ns.at(0));
  const Rational side = dot(n, t.local[opposite] - t.local[pts[0]]);
  if (side > 0) {
    for (auto& c : n) c = -c;
  }
  BoundaryFace face;
  face.offset = dot(n, t.local[pts[0]]);
  face.normal = std::move(n);
  face.points = std::move(pts);
  return face;
}

void toggle_faces(PointTriangulation& t, std::map<FaceKey, BoundaryFace>& boundary,
                  const std::vector<std::size_t>& cell) {
  for (std::size_t j = 0; j < cell.size(); ++j) {
    FaceKey key;
    key.reserve(cell.size() - 1);
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (i != j) key.push_back(cell[i]);
    }
    auto it = boundary.find(key);
    if (it != boundary.end()) {
      boundary.erase(it);
    } else {
      boundary.emplace(key, make_face(t, key, cell[j]));
    }
  }
}

}  // namespace

PointTriangulation place_points(std::span<const Point> points) {
  if (points.empty()) throw GeometryError("placing triangulation of an empty point set");
  const std::size_t ambient = points[0].size();
  for (const auto& p : points) {
    if (p.size() != ambient) throw GeometryError("points of different dimensions");
  }

  PointTriangulation t;
  t.dim = affine_dimension(points);
  t.origin = 0;
  t.used.assign(points.size(), false);

  std::vector<std::size_t> seed{0};
  Matrix seed_dirs;
  for (std::size_t i = 1; i < points.size() && seed.size() < t.dim + 1; ++i) {
    Matrix trial = seed_dirs;
    trial.push_back(points[i] - points[0]);
    if (rank(trial) == seed_dirs.size() + 1) {
      seed_dirs.push_back(points[i] - points[0]);
      seed.push_back(i);
    }
  }

  t.basis = seed_dirs;
  t.pivots = rref(t.basis);
  t.local.reserve(points.size());
  for (const auto& p : points) {
    std::vector<Rational> y(t.dim);
    for (std::size_t j = 0; j < t.dim; ++j) y[j] = p[t.pivots[j]] - points[0][t.pivots[j]];
    t.local.push_back(std::move(y));
  }

  std::vector<std::size_t> seed_cell = seed;
  std::sort(seed_cell.begin(), seed_cell.end());
  t.cells.push_back(seed_cell);
  for (auto s : seed) t.used[s] = true;
  if (t.dim == 0) return t;

  std::map<FaceKey, BoundaryFace> boundary;
  toggle_faces(t, boundary, seed_cell);

  std::vector<bool> in_seed(points.size(), false);
  for (auto s : seed) in_seed[s] = true;

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (in_seed[i]) continue;
    const auto& y = t.local[i];
    std::vector<FaceKey> visible;
    for (const auto& [key, face] : boundary) {
      if (dot(face.normal, y) > face.offset) visible.push_back(key);
    }
    if (visible.empty()) continue;
    t.used[i] = true;
    for (const auto& key : visible) {
      std::vector<std::size_t> cell = key;
      cell.push_back(i);
      std::sort(cell.begin(), cell.end());
      toggle_faces(t, boundary, cell);
      t.cells.push_back(std::move(cell));
    }
  }

  t.boundary.reserve(boundary.size());
  for (auto& [key, face] : boundary) t.boundary.push_back(std::move(face));
  return t;
}

Rational chart_simplex_volume_factor(const PointTriangulation& t,
                                     std::span<const std::size_t> cell) {
  Matrix m;
  m.reserve(t.dim);
  for (std::size_t i = 1; i < cell.size(); ++i) m.push_back(t.local[cell[i]] - t.local[cell[0]]);
  Rational det = determinant(std::move(m));
  return det < 0 ? Rational(-det) : det;
}

}  // namespace cmv
