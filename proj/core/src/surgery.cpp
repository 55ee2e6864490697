#include "ghl/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>

#include "ghl/error.hpp"
#include "ghl/metric_space.hpp"

namespace ghl {

namespace {

struct MeshBuilder {
  std::vector<PointId> ids;
  std::unordered_set<PointId> taken;
  std::vector<Triangle> triangles;
  std::vector<Edge> lengths;

  std::size_t add(const PointId& wanted) {
    PointId name = fresh_id(wanted, taken);
    taken.insert(name);
    ids.push_back(std::move(name));
    return ids.size() - 1;
  }
};

struct Star {
  std::vector<std::size_t> link;  // cyclic, oriented when the mesh is
  std::vector<double> radial;     // |p a_i|
  std::vector<double> side;       // |a_i a_{i+1}|
  double perimeter = 0.0;
};

Star star_of(const SurfaceMesh& mesh, std::size_t p) {
  Star star;
  if (auto wound = coherent_orientation(mesh)) {
    star.link = oriented_link(mesh, *wound, p);
  } else {
    star.link = mesh.link(p);
  }
  const std::size_t k = star.link.size();
  for (std::size_t i = 0; i < k; ++i) {
    star.radial.push_back(mesh.edge_length(p, star.link[i]));
    star.side.push_back(mesh.edge_length(star.link[i], star.link[(i + 1) % k]));
    star.perimeter += star.side.back();
  }
  return star;
}

bool strict_triangle(double a, double b, double c) { return a < b + c && b < a + c && c < a + b; }

// Copies every vertex except p and every triangle away from p. Returns the
// builder index of each mesh vertex (unset for p).
std::vector<std::size_t> copy_outside(MeshBuilder& b, const SurfaceMesh& mesh, std::size_t p) {
  std::vector<std::size_t> map(mesh.vertex_count(), static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
    if (v != p) map[v] = b.add(mesh.id(v));
  for (const auto& t : mesh.triangles()) {
    if (t[0] == p || t[1] == p || t[2] == p) continue;
    b.triangles.push_back({map[t[0]], map[t[1]], map[t[2]]});
  }
  for (const auto& e : mesh.edges()) {
    if (e.u == p || e.v == p) continue;
    b.lengths.push_back({map[e.u], map[e.v], e.length});
  }
  return map;
}

// Fills the star of p with the annulus between its link and `inner`, where
// inner[i] lies on the cone line p -> link[i] at fraction lambda from p.
void fill_annulus(MeshBuilder& b, const Star& star, const std::vector<std::size_t>& map,
                  const std::vector<std::size_t>& inner, double lambda, double inner_edge) {
  const std::size_t k = star.link.size();
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::DegenerateNeck, "cone fraction " + std::to_string(lambda) + " outside (0, 1)");
  }
  std::vector<double> diag(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    const double ri = star.radial[i];
    const double rj = star.radial[j];
    const double cos_apex = (ri * ri + rj * rj - star.side[i] * star.side[i]) / (2.0 * ri * rj);
    const double far = lambda * rj;
    diag[i] = std::sqrt(std::max(0.0, ri * ri + far * far - 2.0 * ri * far * cos_apex));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    const std::size_t a = map[star.link[i]];
    const std::size_t a_next = map[star.link[j]];
    const double radial_i = (1.0 - lambda) * star.radial[i];
    const double radial_j = (1.0 - lambda) * star.radial[j];
    if (!strict_triangle(star.side[i], diag[i], radial_j) || !strict_triangle(diag[i], inner_edge, radial_i)) {
      throw Error(ErrorKind::DegenerateNeck, "annulus triangle at '" + b.ids[a] + "' violates the triangle inequality");
    }
    b.triangles.push_back({a, a_next, inner[j]});
    b.triangles.push_back({a, inner[j], inner[i]});
    b.lengths.push_back({a, inner[i], radial_i});
    b.lengths.push_back({a, inner[j], diag[i]});
    b.lengths.push_back({inner[i], inner[j], inner_edge});
  }
}

SurfaceMesh unit_lengths(const SurfaceMesh& mesh) {
  auto edges = mesh.edges();
  for (auto& e : edges) e.length = 1.0;
  return SurfaceMesh(mesh.vertices(), mesh.triangles(), edges);
}

// Tries to bring the link of v to size k with edge flips: flipping a spoke
// (v, w) drops a neighbour, flipping a rim edge of the star adds one. Lengths
// are reset to 1 after each flip; a summand's metric is ours to choose, and
// uneven stars cannot carry a uniform neck.
std::optional<SurfaceMesh> with_link_size(SurfaceMesh mesh, std::size_t v, std::size_t k) {
  constexpr std::size_t kMinDegree = 4;
  while (mesh.link(v).size() != k) {
    const auto link = mesh.link(v);
    const bool shrink = link.size() > k;
    bool flipped = false;
    for (std::size_t i = 0; i < link.size() && !flipped; ++i) {
      const std::size_t a = shrink ? v : link[i];
      const std::size_t b = shrink ? link[i] : link[(i + 1) % link.size()];
      // Both endpoints of the flipped edge lose a neighbour.
      if (mesh.link(a).size() <= kMinDegree || mesh.link(b).size() <= kMinDegree) continue;
      try {
        mesh = unit_lengths(flip_edge(mesh, a, b));
        flipped = true;
      } catch (const Error&) {
      }
    }
    if (!flipped) return std::nullopt;
  }
  return mesh;
}

void check_scale(double scale, const char* what) {
  if (!(scale > 0.0 && scale <= 1.0)) throw Error(ErrorKind::DegenerateNeck, std::string(what) + " must lie in (0, 1]");
}

}  // namespace

SurgeryResult connected_sum(const SurfaceMesh& m1, std::size_t p1, const SurfaceMesh& m2, std::size_t p2,
                            double neck_scale) {
  check_scale(neck_scale, "neck_scale");
  if (p1 >= m1.vertex_count() || p2 >= m2.vertex_count()) {
    throw Error(ErrorKind::PointNotInSpace, "surgery vertex outside its mesh");
  }
  const Star s1 = star_of(m1, p1);
  const Star s2 = star_of(m2, p2);
  const std::size_t k = s1.link.size();
  if (s2.link.size() != k) {
    throw Error(ErrorKind::LinkMismatch, "links have sizes " + std::to_string(k) + " and " +
                                             std::to_string(s2.link.size()));
  }
  const double neck_length = neck_scale * std::min(s1.perimeter, s2.perimeter);
  const double inner_edge = neck_length / static_cast<double>(k);

  MeshBuilder b;
  auto map1 = copy_outside(b, m1, p1);
  // The second mesh is renamed against the whole first mesh, p1 included, so
  // ids agree with wedge_sum on the same inputs.
  b.taken.insert(m1.id(p1));
  auto map2 = copy_outside(b, m2, p2);

  SurgeryResult out;
  std::vector<std::size_t> inner1(k);
  for (std::size_t i = 0; i < k; ++i) inner1[i] = b.add("neck" + std::to_string(i));
  // Reversed identification keeps the glued annuli coherently oriented.
  std::vector<std::size_t> inner2(k);
  for (std::size_t j = 0; j < k; ++j) inner2[j] = inner1[(k - j) % k];

  fill_annulus(b, s1, map1, inner1, neck_length / s1.perimeter, inner_edge);
  fill_annulus(b, s2, map2, inner2, neck_length / s2.perimeter, inner_edge);

  for (auto v : inner1) {
    out.region.push_back(b.ids[v]);
    out.neck_cycle.push_back(b.ids[v]);
  }
  out.second_ids.resize(m2.vertex_count());
  for (std::size_t v = 0; v < m2.vertex_count(); ++v)
    if (v != p2) out.second_ids[v] = b.ids[map2[v]];
  out.mesh = SurfaceMesh(std::move(b.ids), std::move(b.triangles), b.lengths);
  return out;
}

SurgeryResult attach_handle(const SurfaceMesh& m, std::size_t p, std::size_t q, double scale, bool twisted) {
  check_scale(scale, "scale");
  if (p >= m.vertex_count() || q >= m.vertex_count()) {
    throw Error(ErrorKind::PointNotInSpace, "surgery vertex outside the mesh");
  }
  if (p == q) throw Error(ErrorKind::SamePoint, "handle endpoints must differ");
  if (m.has_edge(p, q)) throw Error(ErrorKind::DegenerateNeck, "handle endpoints are adjacent; refine first");
  const Star sp = star_of(m, p);
  const Star sq = star_of(m, q);
  const std::size_t k = sp.link.size();
  if (sq.link.size() != k) {
    throw Error(ErrorKind::LinkMismatch, "links have sizes " + std::to_string(k) + " and " +
                                             std::to_string(sq.link.size()));
  }
  const double neck_length = scale * std::min(sp.perimeter, sq.perimeter);
  const double inner_edge = neck_length / static_cast<double>(k);
  const double rung = scale * inner_edge;
  const double tube_diagonal = std::hypot(inner_edge, rung);

  // Copy the mesh without p and q.
  MeshBuilder b;
  std::vector<std::size_t> map(m.vertex_count(), static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    if (v != p && v != q) map[v] = b.add(m.id(v));
  b.taken.insert(m.id(p));
  b.taken.insert(m.id(q));
  for (const auto& t : m.triangles()) {
    if (std::find(t.begin(), t.end(), p) != t.end() || std::find(t.begin(), t.end(), q) != t.end()) continue;
    b.triangles.push_back({map[t[0]], map[t[1]], map[t[2]]});
  }
  for (const auto& e : m.edges()) {
    if (e.u == p || e.v == p || e.u == q || e.v == q) continue;
    b.lengths.push_back({map[e.u], map[e.v], e.length});
  }

  std::vector<std::size_t> at_p(k);
  std::vector<std::size_t> at_q(k);
  for (std::size_t i = 0; i < k; ++i) at_p[i] = b.add("handle_p" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) at_q[i] = b.add("handle_q" + std::to_string(i));
  fill_annulus(b, sp, map, at_p, neck_length / sp.perimeter, inner_edge);
  fill_annulus(b, sq, map, at_q, neck_length / sq.perimeter, inner_edge);

  std::vector<std::size_t> across(k);
  for (std::size_t i = 0; i < k; ++i) across[i] = at_q[twisted ? i : (k - i) % k];
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = (i + 1) % k;
    b.triangles.push_back({at_p[i], at_p[j], across[i]});
    b.triangles.push_back({at_p[j], across[j], across[i]});
    b.lengths.push_back({at_p[i], across[i], rung});
    b.lengths.push_back({at_p[j], across[i], tube_diagonal});
  }

  SurgeryResult out;
  for (auto v : at_p) {
    out.region.push_back(b.ids[v]);
    out.neck_cycle.push_back(b.ids[v]);
  }
  for (auto v : at_q) out.region.push_back(b.ids[v]);
  out.mesh = SurfaceMesh(std::move(b.ids), std::move(b.triangles), b.lengths);
  return out;
}

SurgeryResult wedge_tiny_surface(const SurfaceMesh& m, std::size_t p, SurfaceKind kind, double delta) {
  if (kind != SurfaceKind::Torus && kind != SurfaceKind::ProjectivePlane) {
    throw Error(ErrorKind::InvalidMesh, "tiny summand must be a torus or a projective plane");
  }
  if (!(delta > 0.0)) throw Error(ErrorKind::DegenerateNeck, "delta must be positive");
  if (p >= m.vertex_count()) throw Error(ErrorKind::PointNotInSpace, "surgery vertex outside the mesh");
  const std::size_t k = m.link(p).size();

  constexpr int kMaxResolution = 3;
  for (int resolution = 1; resolution <= kMaxResolution; ++resolution) {
    auto summand = make_surface(kind, resolution);
    std::size_t match = summand.vertex_count();
    for (std::size_t v = 0; v < summand.vertex_count() && match == summand.vertex_count(); ++v)
      if (summand.link(v).size() == k) match = v;
    for (std::size_t v = 0; v < summand.vertex_count() && match == summand.vertex_count(); ++v) {
      if (auto adjusted = with_link_size(summand, v, k)) {
        summand = std::move(*adjusted);
        match = v;
      }
    }
    if (match == summand.vertex_count()) continue;

    const double diameter = shortest_path_metric(summand.edge_graph()).diameter();
    summand = scaled(summand, 0.5 * delta / diameter);
    auto result = connected_sum(m, p, summand, match, 0.5);
    for (std::size_t v = 0; v < summand.vertex_count(); ++v)
      if (v != match) result.region.push_back(result.second_ids[v]);
    return result;
  }
  throw Error(ErrorKind::LinkMismatch, "no " + std::string(to_string(kind)) + " vertex with a link of size " +
                                           std::to_string(k));
}

}  // namespace ghl
