#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ghl {

// Absolute tolerance for every metric-axiom assertion in the library.
inline constexpr double kTolerance = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using PointId = std::string;

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
};

// Edge-weighted graph discretizing a compact length space. Parallel edges are
// collapsed to their minimum length on construction; connectivity is not
// required here but every metric operation rejects disconnected graphs.
class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(std::vector<PointId> vertices,
              const std::vector<std::tuple<PointId, PointId, double>>& edges);
  MetricGraph(std::vector<PointId> vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<PointId>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const PointId& id(std::size_t i) const { return vertices_.at(i); }
  std::size_t index_of(std::string_view id) const;

  // Neighbor lists (vertex, length) in edge order.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;
  bool connected() const;
  double max_edge_length() const noexcept;

 private:
  void build(std::vector<Edge> raw);

  std::vector<PointId> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<PointId, std::size_t> index_;
};

// Finite point set with a full distance matrix (row major).
class FiniteLengthSpace {
 public:
  FiniteLengthSpace() = default;
  // Validates shape, symmetry, zero diagonal, positivity and id uniqueness.
  // The O(n^3) triangle check lives in check_metric_axioms.
  FiniteLengthSpace(std::vector<PointId> points, std::vector<double> dist);

  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<PointId>& points() const noexcept { return points_; }
  const PointId& id(std::size_t i) const { return points_.at(i); }
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return index_.count(PointId(id)) != 0; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * points_.size() + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * points_.size(), points_.size()};
  }
  const std::vector<double>& matrix() const noexcept { return dist_; }
  double diameter() const noexcept;

 private:
  std::vector<PointId> points_;
  std::vector<double> dist_;
  std::unordered_map<PointId, std::size_t> index_;
};

struct MetricCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const noexcept { return ok; }
};

// Symmetry, zero diagonal, positive off-diagonal, triangle inequality.
MetricCheck check_metric_axioms(const FiniteLengthSpace& space, double tolerance = kTolerance);

FiniteLengthSpace shortest_path_metric(const MetricGraph& graph);

// Induced submetric on `subset` (indices into `space`, order preserved).
FiniteLengthSpace restrict(const FiniteLengthSpace& space, std::span<const std::size_t> subset);

// Graph whose edges are the pairs not realized through a third point within
// `tolerance`; its shortest-path metric reproduces the space.
MetricGraph skeleton_graph(const FiniteLengthSpace& space, double tolerance = kTolerance);

// Appends "'" to `candidate` until it is not in `taken`.
PointId fresh_id(PointId candidate, const std::unordered_set<PointId>& taken);

}  // namespace ghl
