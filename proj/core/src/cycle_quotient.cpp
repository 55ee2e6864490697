#include "ghl/cycle_quotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "ghl/error.hpp"

namespace ghl {

namespace {

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey edge_key(std::size_t a, std::size_t b) { return std::minmax(a, b); }

std::set<EdgeKey> cycle_edges(const CycleInMesh& cycle) {
  std::set<EdgeKey> out;
  const auto& v = cycle.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) out.insert(edge_key(v[i], v[(i + 1) % v.size()]));
  return out;
}

struct Components {
  std::vector<std::size_t> label;  // per triangle; npos when not a member
  std::size_t count = 0;
};

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Connected components of the member triangles under adjacency across the
// allowed edges.
template <class Allowed>
Components triangle_components(const SurfaceMesh& mesh, const std::vector<char>& member, Allowed allowed) {
  Components out;
  out.label.assign(mesh.face_count(), kNone);
  for (std::size_t seed = 0; seed < mesh.face_count(); ++seed) {
    if (!member[seed] || out.label[seed] != kNone) continue;
    std::queue<std::size_t> queue;
    queue.push(seed);
    out.label[seed] = out.count;
    while (!queue.empty()) {
      auto t = queue.front();
      queue.pop();
      const auto& tri = mesh.triangles()[t];
      for (int s = 0; s < 3; ++s) {
        auto a = tri[s];
        auto b = tri[(s + 1) % 3];
        if (!allowed(a, b)) continue;
        auto faces = mesh.edge_triangles(a, b);
        auto other = faces[0] == t ? faces[1] : faces[0];
        if (member[other] && out.label[other] == kNone) {
          out.label[other] = out.count;
          queue.push(other);
        }
      }
    }
    ++out.count;
  }
  return out;
}

bool traverses(const Triangle& tri, std::size_t a, std::size_t b) {
  for (int s = 0; s < 3; ++s)
    if (tri[s] == a && tri[(s + 1) % 3] == b) return true;
  return false;
}

// Whether the triangles labelled `piece` can be wound coherently without
// crossing cycle edges.
bool piece_orientable(const SurfaceMesh& mesh, const Components& comps, std::size_t piece,
                      const std::set<EdgeKey>& cut) {
  std::vector<Triangle> wound(mesh.face_count());
  std::vector<char> done(mesh.face_count(), 0);
  std::size_t seed = kNone;
  for (std::size_t t = 0; t < mesh.face_count() && seed == kNone; ++t)
    if (comps.label[t] == piece) seed = t;
  wound[seed] = mesh.triangles()[seed];
  done[seed] = 1;
  std::queue<std::size_t> queue;
  queue.push(seed);
  while (!queue.empty()) {
    auto t = queue.front();
    queue.pop();
    for (int s = 0; s < 3; ++s) {
      auto a = wound[t][s];
      auto b = wound[t][(s + 1) % 3];
      if (cut.count(edge_key(a, b))) continue;
      auto faces = mesh.edge_triangles(a, b);
      auto other = faces[0] == t ? faces[1] : faces[0];
      if (!done[other]) {
        Triangle next = mesh.triangles()[other];
        if (traverses(next, a, b)) std::swap(next[0], next[1]);
        wound[other] = next;
        done[other] = 1;
        queue.push(other);
      } else if (traverses(wound[other], a, b)) {
        return false;
      }
    }
  }
  return true;
}

// chi of the piece with its boundary circle capped by one disc.
int capped_euler(const SurfaceMesh& mesh, const Components& comps, std::size_t piece) {
  std::set<std::size_t> verts;
  std::set<EdgeKey> edges;
  int faces = 0;
  for (std::size_t t = 0; t < mesh.face_count(); ++t) {
    if (comps.label[t] != piece) continue;
    ++faces;
    const auto& tri = mesh.triangles()[t];
    for (int s = 0; s < 3; ++s) {
      verts.insert(tri[s]);
      edges.insert(edge_key(tri[s], tri[(s + 1) % 3]));
    }
  }
  return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + faces + 1;
}

const char* orientation_word(bool orientable) { return orientable ? "orientable" : "non-orientable"; }

}  // namespace

void validate(const CycleInMesh& cycle, const SurfaceMesh& mesh) {
  const auto& v = cycle.vertices;
  if (v.size() < 3) throw Error(ErrorKind::NotASimpleCycle, "a cycle needs at least three vertices");
  std::set<std::size_t> distinct;
  for (auto x : v) {
    if (x >= mesh.vertex_count()) throw Error(ErrorKind::PointNotInSpace, "cycle vertex outside the mesh");
    if (!distinct.insert(x).second) {
      throw Error(ErrorKind::NotASimpleCycle, "vertex '" + mesh.id(x) + "' repeats");
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto a = v[i];
    auto b = v[(i + 1) % v.size()];
    if (!mesh.has_edge(a, b)) {
      throw Error(ErrorKind::NotASimpleCycle, mesh.id(a) + "-" + mesh.id(b) + " is not a mesh edge");
    }
  }
}

CycleCollapse collapse_cycle(const SurfaceMesh& mesh, const CycleInMesh& cycle) {
  validate(cycle, mesh);
  const auto space = shortest_path_metric(mesh.edge_graph());
  CycleCollapse out{collapse_subset(space, cycle.vertices), {}, {}};
  const auto cut = cycle_edges(cycle);
  out.complex.vertices = static_cast<int>(mesh.vertex_count() - cycle.vertices.size() + 1);
  out.complex.edges = static_cast<int>(mesh.edge_count() - cut.size());
  out.complex.faces = static_cast<int>(mesh.face_count());
  out.merged_vertex = out.quotient.space.id(out.quotient.projection[cycle.vertices.front()]);
  return out;
}

QuotientClassification classify_cycle_quotient(const SurfaceMesh& mesh, const CycleInMesh& cycle) {
  validate(cycle, mesh);
  const auto cut = cycle_edges(cycle);
  std::vector<char> on_cycle(mesh.vertex_count(), 0);
  for (auto v : cycle.vertices) on_cycle[v] = 1;

  std::vector<char> every(mesh.face_count(), 1);
  const auto pieces = triangle_components(mesh, every, [&](std::size_t a, std::size_t b) {
    return cut.count(edge_key(a, b)) == 0;
  });

  // Sides of the cycle: its star, glued across the non-cycle edges at cycle vertices.
  std::vector<char> near(mesh.face_count(), 0);
  for (auto v : cycle.vertices)
    for (auto t : mesh.incident_triangles(v)) near[t] = 1;
  const auto sides = triangle_components(mesh, near, [&](std::size_t a, std::size_t b) {
    return (on_cycle[a] || on_cycle[b]) && cut.count(edge_key(a, b)) == 0;
  });
  if (sides.count != 1 && sides.count != 2) {
    throw Error(ErrorKind::UnrecognizedLink, "link of the merged vertex has " + std::to_string(sides.count) +
                                                 " components");
  }

  const int c = connectivity_number(mesh);
  const bool input_orientable = orientable(mesh);
  QuotientClassification out;
  if (pieces.count == 2) {
    WedgeCase w;
    w.c1 = 2 - capped_euler(mesh, pieces, 0);
    w.c2 = 2 - capped_euler(mesh, pieces, 1);
    w.first_orientable = piece_orientable(mesh, pieces, 0, cut);
    w.second_orientable = piece_orientable(mesh, pieces, 1, cut);
    out.orientability_notes = std::string("wedge of ") + orientation_word(w.first_orientable) + " and " +
                              orientation_word(w.second_orientable) + " surfaces; input is " +
                              orientation_word(input_orientable);
    out.kind = w;
  } else if (pieces.count == 1 && sides.count == 2) {
    IdentificationCase id{c - 2, piece_orientable(mesh, pieces, 0, cut)};
    out.orientability_notes = std::string("2-point identification of an ") + orientation_word(id.orientable) +
                              " surface; input is " + orientation_word(input_orientable);
    out.kind = id;
  } else if (pieces.count == 1) {
    if (input_orientable) {
      throw std::logic_error("one-sided cycle on an orientable mesh");
    }
    SurfaceCase s{c - 1, piece_orientable(mesh, pieces, 0, cut)};
    out.orientability_notes = std::string("closed ") + orientation_word(s.orientable) +
                              " surface; input is non-orientable";
    out.kind = s;
  } else {
    throw Error(ErrorKind::UnrecognizedLink, "cutting along the cycle left " + std::to_string(pieces.count) +
                                                 " pieces");
  }
  return out;
}

}  // namespace ghl
