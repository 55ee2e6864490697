#include <array>
#include <cmath>
#include <string>

#include "ghl/error.hpp"
#include "ghl/surface_mesh.hpp"
#include "ghl/surgery.hpp"

namespace ghl {

namespace {

std::vector<PointId> numbered(std::size_t n) {
  std::vector<PointId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
  return ids;
}

SurfaceMesh unit_mesh(std::size_t n, std::vector<Triangle> tris) {
  std::vector<Edge> lengths;
  for (const auto& t : tris)
    for (int s = 0; s < 3; ++s) lengths.push_back({t[s], t[(s + 1) % 3], 1.0});
  return SurfaceMesh(numbered(n), std::move(tris), lengths);
}

SurfaceMesh icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> p;
  for (double a : {-1.0, 1.0})
    for (double b : {-phi, phi}) {
      p.push_back({0.0, a, b});
      p.push_back({a, b, 0.0});
      p.push_back({b, 0.0, a});
    }
  auto adjacent = [&](std::size_t i, std::size_t j) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) d2 += (p[i][k] - p[j][k]) * (p[i][k] - p[j][k]);
    return std::abs(d2 - 4.0) < 1e-9;
  };
  std::vector<Triangle> tris;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j)
      for (std::size_t k = j + 1; k < 12; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) tris.push_back({i, j, k});
  return unit_mesh(12, std::move(tris));
}

// 3x3 grid on the torus with one diagonal per square; every edge has length 1,
// so the metric is the flat hexagonal torus.
SurfaceMesh torus_grid() {
  auto at = [](std::size_t i, std::size_t j) { return (i % 3) * 3 + (j % 3); };
  std::vector<Triangle> tris;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      tris.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      tris.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  return unit_mesh(9, std::move(tris));
}

// Hemi-icosahedron: the 6-vertex minimal triangulation of the projective plane.
SurfaceMesh projective_plane6() {
  return unit_mesh(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                       {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

}  // namespace

SurfaceMesh make_surface(SurfaceKind kind, int resolution) {
  if (resolution < 1) throw Error(ErrorKind::InvalidMesh, "resolution must be at least 1");
  SurfaceMesh mesh;
  switch (kind) {
    case SurfaceKind::Sphere: mesh = icosahedron(); break;
    case SurfaceKind::Torus: mesh = torus_grid(); break;
    case SurfaceKind::ProjectivePlane: mesh = projective_plane6(); break;
    case SurfaceKind::Klein: {
      auto rp2 = projective_plane6();
      mesh = connected_sum(rp2, 0, rp2, 0, 0.5).mesh;
      break;
    }
  }
  for (int r = 1; r < resolution; ++r) mesh = refine(mesh);
  return mesh;
}

}  // namespace ghl
