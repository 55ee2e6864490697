#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ghl/metric_space.hpp"

namespace ghl {

using Triangle = std::array<std::size_t, 3>;

// Triangulated closed surface with per-edge lengths. The constructor enforces
// the closed-surface conditions (every edge in exactly two triangles, every
// vertex link a single cycle, connected edge graph) and the strict triangle
// inequality on each face.
class SurfaceMesh {
 public:
  SurfaceMesh() = default;
  SurfaceMesh(std::vector<PointId> vertices, std::vector<Triangle> triangles, const std::vector<Edge>& edge_lengths);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t face_count() const noexcept { return triangles_.size(); }

  const std::vector<PointId>& vertices() const noexcept { return vertices_; }
  const PointId& id(std::size_t v) const { return vertices_.at(v); }
  std::size_t index_of(std::string_view id) const;
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  // Sorted by (u, v) with u < v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(std::size_t u, std::size_t v) const noexcept;
  double edge_length(std::size_t u, std::size_t v) const;
  double max_edge_length() const noexcept;

  // Link of v as a cyclic vertex sequence.
  const std::vector<std::size_t>& link(std::size_t v) const { return links_.at(v); }
  const std::vector<std::size_t>& incident_triangles(std::size_t v) const { return incident_.at(v); }
  // Triangles on either side of edge (u, v).
  std::array<std::size_t, 2> edge_triangles(std::size_t u, std::size_t v) const;

  MetricGraph edge_graph() const;

 private:
  std::uint64_t key(std::size_t u, std::size_t v) const noexcept;

  std::vector<PointId> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::unordered_map<PointId, std::size_t> index_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
  std::vector<std::array<std::size_t, 2>> edge_faces_;
  std::vector<std::vector<std::size_t>> links_;
  std::vector<std::vector<std::size_t>> incident_;
};

int euler_characteristic(const SurfaceMesh& mesh) noexcept;

// 2 - chi; the Z/2 first Betti number of a closed surface.
int connectivity_number(const SurfaceMesh& mesh) noexcept;

// Triangles re-wound so that every interior edge is traversed in opposite
// directions by its two faces, or nullopt when no such winding exists.
std::optional<std::vector<Triangle>> coherent_orientation(const SurfaceMesh& mesh);

bool orientable(const SurfaceMesh& mesh);

// Link of v ordered so that (v, link[i], link[i+1]) follows `wound`.
std::vector<std::size_t> oriented_link(const SurfaceMesh& mesh, const std::vector<Triangle>& wound, std::size_t v);

enum class SurfaceKind { Sphere, Torus, ProjectivePlane, Klein };

std::string_view to_string(SurfaceKind kind) noexcept;
std::optional<SurfaceKind> parse_surface_kind(std::string_view name) noexcept;

// Resolution 1 is the base triangulation (icosahedron, 3x3 torus grid,
// 6-vertex projective plane, sum of two of those for the Klein bottle); each
// further step is one refine(). All base edges have length 1.
SurfaceMesh make_surface(SurfaceKind kind, int resolution);

// Midpoint subdivision: each face into four, every new edge half of a parent
// edge. Midpoint of (u, v) is named "[u,v]" with u < v.
SurfaceMesh refine(const SurfaceMesh& mesh);

// Intrinsic flip of edge (u, v): the two faces on it are unfolded into a
// planar quadrilateral and re-split along the other diagonal. InvalidMesh when
// the quadrilateral is not strictly convex or the diagonal is already an edge.
SurfaceMesh flip_edge(const SurfaceMesh& mesh, std::size_t u, std::size_t v);

SurfaceMesh scaled(const SurfaceMesh& mesh, double factor);

}  // namespace ghl
