#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ghl/constructions.hpp"
#include "ghl/surface_mesh.hpp"

namespace ghl {

// Simple closed edge path, given as its vertex sequence (closing edge implied).
struct CycleInMesh {
  std::vector<std::size_t> vertices;
};

// Throws NotASimpleCycle unless the cycle has >= 3 distinct vertices and every
// consecutive pair, including last -> first, is a mesh edge.
void validate(const CycleInMesh& cycle, const SurfaceMesh& mesh);

struct CellCounts {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int euler() const noexcept { return vertices - edges + faces; }
};

struct CycleCollapse {
  Quotient quotient;  // metric quotient of the edge-graph metric
  CellCounts complex;
  PointId merged_vertex;
};

CycleCollapse collapse_cycle(const SurfaceMesh& mesh, const CycleInMesh& cycle);

// The quotient is a wedge of closed surfaces of connectivity c1 and c2.
struct WedgeCase {
  int c1 = 0;
  int c2 = 0;
  bool first_orientable = true;
  bool second_orientable = true;
};
// The quotient is a 2-point identification of a surface of connectivity c - 2.
struct IdentificationCase {
  int c = 0;
  bool orientable = true;
};
// The quotient is a closed surface of connectivity c - 1.
struct SurfaceCase {
  int c = 0;
  bool orientable = true;
};

struct QuotientClassification {
  std::variant<WedgeCase, IdentificationCase, SurfaceCase> kind;
  std::string orientability_notes;

  int case_number() const noexcept { return static_cast<int>(kind.index()) + 1; }
};

// Cutting the mesh along the cycle leaves one or two pieces; locally the cycle
// has one or two sides. Two pieces: wedge case, each side capped by a disc.
// One piece, two sides: identification case. One side: surface case, which is
// only possible on a non-orientable mesh. Contractibility of the cycle is not
// decided here; a contractible cycle reports the wedge case with a sphere.
QuotientClassification classify_cycle_quotient(const SurfaceMesh& mesh, const CycleInMesh& cycle);

}  // namespace ghl
