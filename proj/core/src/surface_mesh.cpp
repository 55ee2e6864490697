#include "ghl/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>

#include "ghl/error.hpp"

namespace ghl {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::uint64_t SurfaceMesh::key(std::size_t u, std::size_t v) const noexcept {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * vertices_.size() + v;
}

SurfaceMesh::SurfaceMesh(std::vector<PointId> vertices, std::vector<Triangle> triangles,
                         const std::vector<Edge>& edge_lengths)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const std::size_t n = vertices_.size();
  if (n < 4) throw Error(ErrorKind::InvalidMesh, "a closed surface mesh needs at least 4 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw Error(ErrorKind::InvalidMesh, "duplicate vertex id '" + vertices_[i] + "'");
    }
  }

  std::set<std::array<std::size_t, 3>> seen_faces;
  incident_.assign(n, {});
  std::vector<std::array<std::size_t, 2>> raw_faces;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    auto tri = triangles_[t];
    for (auto v : tri)
      if (v >= n) throw Error(ErrorKind::InvalidMesh, "triangle references a vertex index out of range");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw Error(ErrorKind::InvalidMesh, "degenerate triangle");
    }
    auto sorted = tri;
    std::sort(sorted.begin(), sorted.end());
    if (!seen_faces.insert(sorted).second) throw Error(ErrorKind::InvalidMesh, "duplicate triangle");
    for (int s = 0; s < 3; ++s) {
      auto a = tri[s];
      auto b = tri[(s + 1) % 3];
      auto [it, inserted] = edge_index_.emplace(key(a, b), edges_.size());
      if (inserted) {
        edges_.push_back({std::min(a, b), std::max(a, b), 0.0});
        edge_faces_.push_back({t, kNone});
      } else {
        auto& faces = edge_faces_[it->second];
        if (faces[1] != kNone) {
          throw Error(ErrorKind::NotAClosedSurface,
                      "edge " + vertices_[a] + "-" + vertices_[b] + " borders more than two triangles");
        }
        faces[1] = t;
      }
    }
    for (auto v : tri) incident_[v].push_back(t);
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edge_faces_[e][1] == kNone) {
      throw Error(ErrorKind::NotAClosedSurface,
                  "edge " + vertices_[edges_[e].u] + "-" + vertices_[edges_[e].v] + " borders one triangle");
    }
  }

  std::vector<char> has_length(edges_.size(), 0);
  for (const auto& e : edge_lengths) {
    if (e.u >= n || e.v >= n) throw Error(ErrorKind::InvalidMesh, "edge length for a vertex out of range");
    auto it = edge_index_.find(key(e.u, e.v));
    if (e.u == e.v || it == edge_index_.end()) {
      throw Error(ErrorKind::InvalidMesh, "length given for non-edge " + vertices_[e.u] + "-" + vertices_[e.v]);
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(ErrorKind::InvalidMesh, "edge lengths must be positive and finite");
    }
    if (has_length[it->second] && edges_[it->second].length != e.length) {
      throw Error(ErrorKind::InvalidMesh, "conflicting lengths for " + vertices_[e.u] + "-" + vertices_[e.v]);
    }
    has_length[it->second] = 1;
    edges_[it->second].length = e.length;
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!has_length[e]) {
      throw Error(ErrorKind::InvalidMesh, "missing length for " + vertices_[edges_[e].u] + "-" + vertices_[edges_[e].v]);
    }
  }
  for (const auto& tri : triangles_) {
    double a = edge_length(tri[0], tri[1]);
    double b = edge_length(tri[1], tri[2]);
    double c = edge_length(tri[2], tri[0]);
    if (!(a < b + c && b < a + c && c < a + b)) {
      throw Error(ErrorKind::InvalidMesh, "triangle " + vertices_[tri[0]] + "," + vertices_[tri[1]] + "," +
                                              vertices_[tri[2]] + " violates the strict triangle inequality");
    }
  }

  links_.assign(n, {});
  for (std::size_t v = 0; v < n; ++v) {
    const auto& faces = incident_[v];
    if (faces.empty()) throw Error(ErrorKind::NotAClosedSurface, "vertex '" + vertices_[v] + "' is in no triangle");
    // Opposite edges of the star, walked as a chain.
    std::unordered_map<std::size_t, std::vector<std::size_t>> next;
    for (auto t : faces) {
      std::size_t other[2];
      int k = 0;
      for (auto w : triangles_[t])
        if (w != v) other[k++] = w;
      next[other[0]].push_back(other[1]);
      next[other[1]].push_back(other[0]);
    }
    for (const auto& [w, nb] : next) {
      if (nb.size() != 2) throw Error(ErrorKind::NotAClosedSurface, "link of '" + vertices_[v] + "' is not a cycle");
    }
    auto& cycle = links_[v];
    std::size_t start = next.begin()->first;
    for (const auto& [w, nb] : next) start = std::min(start, w);
    std::size_t prev = kNone;
    std::size_t cur = start;
    do {
      cycle.push_back(cur);
      const auto& nb = next[cur];
      std::size_t step = nb[0] != prev ? nb[0] : nb[1];
      if (prev == kNone) step = std::min(nb[0], nb[1]);
      prev = cur;
      cur = step;
    } while (cur != start && cycle.size() <= faces.size());
    if (cycle.size() != faces.size()) {
      throw Error(ErrorKind::NotAClosedSurface, "link of '" + vertices_[v] + "' is not a single cycle");
    }
  }

  if (!edge_graph().connected()) throw Error(ErrorKind::NotAClosedSurface, "edge graph is disconnected");

  std::vector<std::size_t> order(edges_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(edges_[a].u, edges_[a].v) < std::tie(edges_[b].u, edges_[b].v);
  });
  std::vector<Edge> sorted_edges;
  std::vector<std::array<std::size_t, 2>> sorted_faces;
  for (auto i : order) {
    edge_index_[key(edges_[i].u, edges_[i].v)] = sorted_edges.size();
    sorted_edges.push_back(edges_[i]);
    sorted_faces.push_back(edge_faces_[i]);
  }
  edges_ = std::move(sorted_edges);
  edge_faces_ = std::move(sorted_faces);
}

std::size_t SurfaceMesh::index_of(std::string_view id) const {
  auto it = index_.find(PointId(id));
  if (it == index_.end()) throw Error(ErrorKind::PointNotInSpace, "unknown mesh vertex '" + PointId(id) + "'");
  return it->second;
}

bool SurfaceMesh::has_edge(std::size_t u, std::size_t v) const noexcept {
  return u != v && u < vertices_.size() && v < vertices_.size() && edge_index_.count(key(u, v)) != 0;
}

double SurfaceMesh::edge_length(std::size_t u, std::size_t v) const {
  auto it = has_edge(u, v) ? edge_index_.find(key(u, v)) : edge_index_.end();
  if (it == edge_index_.end()) throw Error(ErrorKind::InvalidMesh, "not an edge of the mesh");
  return edges_[it->second].length;
}

double SurfaceMesh::max_edge_length() const noexcept {
  double best = 0.0;
  for (const auto& e : edges_) best = std::max(best, e.length);
  return best;
}

std::array<std::size_t, 2> SurfaceMesh::edge_triangles(std::size_t u, std::size_t v) const {
  auto it = has_edge(u, v) ? edge_index_.find(key(u, v)) : edge_index_.end();
  if (it == edge_index_.end()) throw Error(ErrorKind::InvalidMesh, "not an edge of the mesh");
  return edge_faces_[it->second];
}

MetricGraph SurfaceMesh::edge_graph() const { return MetricGraph(vertices_, edges_); }

int euler_characteristic(const SurfaceMesh& mesh) noexcept {
  return static_cast<int>(mesh.vertex_count()) - static_cast<int>(mesh.edge_count()) +
         static_cast<int>(mesh.face_count());
}

int connectivity_number(const SurfaceMesh& mesh) noexcept { return 2 - euler_characteristic(mesh); }

namespace {

// True when `tri` traverses a -> b.
bool traverses(const Triangle& tri, std::size_t a, std::size_t b) {
  for (int s = 0; s < 3; ++s)
    if (tri[s] == a && tri[(s + 1) % 3] == b) return true;
  return false;
}

}  // namespace

std::optional<std::vector<Triangle>> coherent_orientation(const SurfaceMesh& mesh) {
  const auto& tris = mesh.triangles();
  std::vector<Triangle> wound(tris.size());
  std::vector<char> done(tris.size(), 0);
  for (std::size_t seed = 0; seed < tris.size(); ++seed) {
    if (done[seed]) continue;
    wound[seed] = tris[seed];
    done[seed] = 1;
    std::queue<std::size_t> queue;
    queue.push(seed);
    while (!queue.empty()) {
      auto t = queue.front();
      queue.pop();
      const auto& tri = wound[t];
      for (int s = 0; s < 3; ++s) {
        auto a = tri[s];
        auto b = tri[(s + 1) % 3];
        auto faces = mesh.edge_triangles(a, b);
        auto other = faces[0] == t ? faces[1] : faces[0];
        if (!done[other]) {
          Triangle next = tris[other];
          if (traverses(next, a, b)) std::swap(next[0], next[1]);
          wound[other] = next;
          done[other] = 1;
          queue.push(other);
        } else if (traverses(wound[other], a, b)) {
          return std::nullopt;
        }
      }
    }
  }
  return wound;
}

bool orientable(const SurfaceMesh& mesh) { return coherent_orientation(mesh).has_value(); }

std::vector<std::size_t> oriented_link(const SurfaceMesh& mesh, const std::vector<Triangle>& wound, std::size_t v) {
  const auto& faces = mesh.incident_triangles(v);
  std::unordered_map<std::size_t, std::size_t> after;
  for (auto t : faces) {
    const auto& tri = wound[t];
    for (int s = 0; s < 3; ++s)
      if (tri[s] == v) after[tri[(s + 1) % 3]] = tri[(s + 2) % 3];
  }
  const auto& cyc = mesh.link(v);
  std::vector<std::size_t> out{cyc.front()};
  while (out.size() < cyc.size()) out.push_back(after.at(out.back()));
  return out;
}

std::string_view to_string(SurfaceKind kind) noexcept {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::ProjectivePlane: return "projective_plane";
    case SurfaceKind::Klein: return "klein";
  }
  return "unknown";
}

std::optional<SurfaceKind> parse_surface_kind(std::string_view name) noexcept {
  if (name == "sphere") return SurfaceKind::Sphere;
  if (name == "torus") return SurfaceKind::Torus;
  if (name == "projective_plane" || name == "rp2") return SurfaceKind::ProjectivePlane;
  if (name == "klein") return SurfaceKind::Klein;
  return std::nullopt;
}

SurfaceMesh refine(const SurfaceMesh& mesh) {
  std::vector<PointId> ids = mesh.vertices();
  std::unordered_set<PointId> taken(ids.begin(), ids.end());
  const auto& edges = mesh.edges();
  std::unordered_map<std::uint64_t, std::size_t> midpoint;
  const std::size_t n = mesh.vertex_count();
  std::vector<Edge> lengths;
  lengths.reserve(edges.size() * 2 + mesh.face_count() * 3);
  for (const auto& e : edges) {
    const auto& a = mesh.id(e.u);
    const auto& b = mesh.id(e.v);
    PointId name = fresh_id(a < b ? "[" + a + "," + b + "]" : "[" + b + "," + a + "]", taken);
    taken.insert(name);
    std::size_t m = ids.size();
    ids.push_back(std::move(name));
    midpoint[static_cast<std::uint64_t>(e.u) * n + e.v] = m;
    lengths.push_back({e.u, m, e.length / 2.0});
    lengths.push_back({m, e.v, e.length / 2.0});
  }
  auto mid = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return midpoint.at(static_cast<std::uint64_t>(a) * n + b);
  };
  std::vector<Triangle> tris;
  tris.reserve(mesh.face_count() * 4);
  for (const auto& t : mesh.triangles()) {
    auto ab = mid(t[0], t[1]);
    auto bc = mid(t[1], t[2]);
    auto ca = mid(t[2], t[0]);
    tris.push_back({t[0], ab, ca});
    tris.push_back({t[1], bc, ab});
    tris.push_back({t[2], ca, bc});
    tris.push_back({ab, bc, ca});
    // Midsegments are half the opposite side.
    lengths.push_back({ab, ca, mesh.edge_length(t[1], t[2]) / 2.0});
    lengths.push_back({bc, ab, mesh.edge_length(t[2], t[0]) / 2.0});
    lengths.push_back({ca, bc, mesh.edge_length(t[0], t[1]) / 2.0});
  }
  return SurfaceMesh(std::move(ids), std::move(tris), lengths);
}

SurfaceMesh flip_edge(const SurfaceMesh& mesh, std::size_t u, std::size_t v) {
  if (!mesh.has_edge(u, v)) throw Error(ErrorKind::InvalidMesh, "flip of a non-edge");
  const auto faces = mesh.edge_triangles(u, v);
  auto third = [&](std::size_t t) {
    for (auto w : mesh.triangles()[t])
      if (w != u && w != v) return w;
    return kNone;
  };
  const std::size_t x = third(faces[0]);
  const std::size_t y = third(faces[1]);
  if (x == y || mesh.has_edge(x, y)) {
    throw Error(ErrorKind::InvalidMesh, "flip would duplicate edge " + mesh.id(x) + "-" + mesh.id(y));
  }
  // Unfold both triangles into the plane with u at the origin, v on the x-axis.
  const double e = mesh.edge_length(u, v);
  auto place = [&](std::size_t w, double side) {
    const double a = mesh.edge_length(u, w);
    const double b = mesh.edge_length(v, w);
    const double px = (a * a - b * b + e * e) / (2.0 * e);
    return std::array<double, 2>{px, side * std::sqrt(std::max(0.0, a * a - px * px))};
  };
  const auto px = place(x, 1.0);
  const auto py = place(y, -1.0);
  const double s = px[1] / (px[1] - py[1]);
  const double cross = px[0] + s * (py[0] - px[0]);
  if (!(cross > 0.0 && cross < e)) throw Error(ErrorKind::InvalidMesh, "flip of a non-convex quadrilateral");
  const double diagonal = std::hypot(px[0] - py[0], px[1] - py[1]);

  std::vector<Triangle> tris;
  for (std::size_t t = 0; t < mesh.face_count(); ++t)
    if (t != faces[0] && t != faces[1]) tris.push_back(mesh.triangles()[t]);
  // Keep the winding of the face that carries x.
  const bool forward = traverses(mesh.triangles()[faces[0]], u, v);
  const std::size_t a = forward ? u : v;
  const std::size_t b = forward ? v : u;
  tris.push_back({a, y, x});
  tris.push_back({y, b, x});
  std::vector<Edge> lengths;
  for (const auto& edge : mesh.edges())
    if (!(edge.u == std::min(u, v) && edge.v == std::max(u, v))) lengths.push_back(edge);
  lengths.push_back({x, y, diagonal});
  return SurfaceMesh(mesh.vertices(), std::move(tris), lengths);
}

SurfaceMesh scaled(const SurfaceMesh& mesh, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorKind::InvalidMesh, "scale factor must be positive");
  auto edges = mesh.edges();
  for (auto& e : edges) e.length *= factor;
  return SurfaceMesh(mesh.vertices(), mesh.triangles(), edges);
}

}  // namespace ghl
