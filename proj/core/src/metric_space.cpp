#include "ghl/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <sstream>

#include "ghl/error.hpp"

namespace ghl {

namespace {

std::unordered_map<PointId, std::size_t> index_ids(const std::vector<PointId>& ids, ErrorKind on_duplicate) {
  std::unordered_map<PointId, std::size_t> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], i).second) {
      throw Error(on_duplicate, "duplicate identifier '" + ids[i] + "'");
    }
  }
  return index;
}

}  // namespace

MetricGraph::MetricGraph(std::vector<PointId> vertices,
                         const std::vector<std::tuple<PointId, PointId, double>>& edges)
    : vertices_(std::move(vertices)) {
  index_ = index_ids(vertices_, ErrorKind::InvalidGraph);
  std::vector<Edge> raw;
  raw.reserve(edges.size());
  for (const auto& [u, v, length] : edges) {
    auto iu = index_.find(u);
    auto iv = index_.find(v);
    if (iu == index_.end() || iv == index_.end()) {
      throw Error(ErrorKind::PointNotInSpace, "edge references unknown vertex '" +
                                                  (iu == index_.end() ? u : v) + "'");
    }
    raw.push_back({iu->second, iv->second, length});
  }
  build(std::move(raw));
}

MetricGraph::MetricGraph(std::vector<PointId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)) {
  index_ = index_ids(vertices_, ErrorKind::InvalidGraph);
  for (const auto& e : edges) {
    if (e.u >= vertices_.size() || e.v >= vertices_.size()) {
      throw Error(ErrorKind::PointNotInSpace, "edge references vertex index out of range");
    }
  }
  build(std::move(edges));
}

void MetricGraph::build(std::vector<Edge> raw) {
  std::map<std::pair<std::size_t, std::size_t>, double> shortest;
  for (const auto& e : raw) {
    if (e.u == e.v) {
      throw Error(ErrorKind::InvalidGraph, "self-loop at '" + vertices_[e.u] + "'");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(ErrorKind::InvalidGraph, "edge lengths must be positive and finite");
    }
    auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = shortest.emplace(key, e.length);
    if (!inserted) it->second = std::min(it->second, e.length);
  }
  edges_.clear();
  edges_.reserve(shortest.size());
  for (const auto& [key, length] : shortest) edges_.push_back({key.first, key.second, length});
}

std::size_t MetricGraph::index_of(std::string_view id) const {
  auto it = index_.find(PointId(id));
  if (it == index_.end()) throw Error(ErrorKind::PointNotInSpace, "unknown vertex '" + PointId(id) + "'");
  return it->second;
}

std::vector<std::vector<std::pair<std::size_t, double>>> MetricGraph::adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(vertices_.size());
  for (const auto& e : edges_) {
    adj[e.u].emplace_back(e.v, e.length);
    adj[e.v].emplace_back(e.u, e.length);
  }
  return adj;
}

bool MetricGraph::connected() const {
  if (vertices_.empty()) return false;
  auto adj = adjacency();
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto [w, len] : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertices_.size();
}

double MetricGraph::max_edge_length() const noexcept {
  double best = 0.0;
  for (const auto& e : edges_) best = std::max(best, e.length);
  return best;
}

FiniteLengthSpace::FiniteLengthSpace(std::vector<PointId> points, std::vector<double> dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  const std::size_t n = points_.size();
  if (n == 0) throw Error(ErrorKind::InvalidSpace, "a space needs at least one point");
  if (dist_.size() != n * n) throw Error(ErrorKind::InvalidSpace, "distance matrix is not square");
  index_ = index_ids(points_, ErrorKind::InvalidSpace);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist_[i * n + i]) > kTolerance) {
      throw Error(ErrorKind::InvalidSpace, "nonzero diagonal at '" + points_[i] + "'");
    }
    dist_[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = dist_[i * n + j];
      double b = dist_[j * n + i];
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::InvalidSpace, "non-finite distance");
      }
      if (std::abs(a - b) > kTolerance) {
        throw Error(ErrorKind::InvalidSpace, "asymmetric distance between '" + points_[i] + "' and '" + points_[j] + "'");
      }
      if (!(a > 0.0)) {
        throw Error(ErrorKind::InvalidSpace, "non-positive distance between '" + points_[i] + "' and '" + points_[j] + "'");
      }
    }
  }
}

std::size_t FiniteLengthSpace::index_of(std::string_view id) const {
  auto it = index_.find(PointId(id));
  if (it == index_.end()) throw Error(ErrorKind::PointNotInSpace, "unknown point '" + PointId(id) + "'");
  return it->second;
}

double FiniteLengthSpace::diameter() const noexcept {
  double best = 0.0;
  for (double d : dist_) best = std::max(best, d);
  return best;
}

MetricCheck check_metric_axioms(const FiniteLengthSpace& space, double tolerance) {
  const std::size_t n = space.size();
  auto fail = [&](const std::string& what) { return MetricCheck{false, what}; };
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(space(i, i)) > tolerance) return fail("diagonal at " + space.id(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(space(i, j) - space(j, i)) > tolerance) return fail("symmetry " + space.id(i) + "," + space.id(j));
      if (!(space(i, j) > 0.0)) return fail("positivity " + space.id(i) + "," + space.id(j));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto rk = space.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      auto ri = space.row(i);
      const double dik = ri[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (ri[j] > dik + rk[j] + tolerance) {
          std::ostringstream os;
          os << "triangle " << space.id(i) << "," << space.id(j) << " via " << space.id(k) << ": " << ri[j]
             << " > " << dik + rk[j];
          return fail(os.str());
        }
      }
    }
  }
  return {};
}

FiniteLengthSpace shortest_path_metric(const MetricGraph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0 || !graph.connected()) {
    throw Error(ErrorKind::DisconnectedGraph, "shortest-path metric needs a connected graph");
  }
  auto adj = graph.adjacency();
  std::vector<double> dist(n * n, kInfinity);
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    double* d = dist.data() + s * n;
    d[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
      auto [du, u] = heap.top();
      heap.pop();
      if (du > d[u]) continue;
      for (auto [w, len] : adj[u]) {
        if (du + len < d[w]) {
          d[w] = du + len;
          heap.emplace(d[w], w);
        }
      }
    }
  }
  // Dijkstra from both ends can disagree in the last bit; pin exact symmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double m = std::min(dist[i * n + j], dist[j * n + i]);
      dist[i * n + j] = dist[j * n + i] = m;
    }
  return FiniteLengthSpace(graph.vertices(), std::move(dist));
}

FiniteLengthSpace restrict(const FiniteLengthSpace& space, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "restriction to an empty subset");
  const std::size_t m = subset.size();
  std::vector<PointId> ids;
  ids.reserve(m);
  for (auto i : subset) {
    if (i >= space.size()) throw Error(ErrorKind::PointNotInSpace, "subset index out of range");
    ids.push_back(space.id(i));
  }
  std::vector<double> dist(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) dist[a * m + b] = space(subset[a], subset[b]);
  return FiniteLengthSpace(std::move(ids), std::move(dist));
}

MetricGraph skeleton_graph(const FiniteLengthSpace& space, double tolerance) {
  const std::size_t n = space.size();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dij = space(i, j);
      bool through = false;
      for (std::size_t k = 0; k < n && !through; ++k) {
        if (k == i || k == j) continue;
        through = space(i, k) + space(k, j) <= dij + tolerance;
      }
      if (!through) edges.push_back({i, j, dij});
    }
  }
  return MetricGraph(space.points(), std::move(edges));
}

PointId fresh_id(PointId candidate, const std::unordered_set<PointId>& taken) {
  while (taken.count(candidate)) candidate += '\'';
  return candidate;
}

}  // namespace ghl
