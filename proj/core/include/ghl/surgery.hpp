#pragma once

#include <cstddef>
#include <vector>

#include "ghl/surface_mesh.hpp"

namespace ghl {

// Surgeries cut out a small disc around a vertex p: inside the star of p a new
// cycle is placed on the cone lines at fraction lambda from p (so the star is
// an annulus plus a tiny removed cone), and the new cycles are glued.
struct SurgeryResult {
  SurfaceMesh mesh;
  // Every vertex created by the surgery (inner cycles, tube, tiny summand).
  std::vector<PointId> region;
  // The glued neck cycle in cyclic order; for a handle, the cycle at p.
  std::vector<PointId> neck_cycle;
  // connected_sum: new id of each vertex of the second mesh ("" for p2).
  std::vector<PointId> second_ids;
};

// Connected sum at p1 and p2. Links must have equal size. The inner cycles
// have common length L = neck_scale * min(link perimeters) and uniform edges
// L / k; they are identified with reversed orientation.
SurgeryResult connected_sum(const SurfaceMesh& m1, std::size_t p1, const SurfaceMesh& m2, std::size_t p2,
                            double neck_scale);

// Handle between p and q: inner cycles as above (L = scale * min perimeter),
// bridged by a ring of 2k triangles with rung length scale * L / k. Untwisted
// handles keep an orientable surface orientable; twisted ones never do.
SurgeryResult attach_handle(const SurfaceMesh& m, std::size_t p, std::size_t q, double scale, bool twisted = false);

// Connected sum with a torus or projective plane scaled to diameter delta / 2
// at p. The summand is refined, and then edge-flipped, until it has a vertex
// whose link size matches.
SurgeryResult wedge_tiny_surface(const SurfaceMesh& m, std::size_t p, SurfaceKind kind, double delta);

}  // namespace ghl
