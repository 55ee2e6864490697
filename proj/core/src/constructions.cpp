#include "ghl/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ghl/error.hpp"

namespace ghl {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Relabels `labels` densely in order of first appearance.
std::size_t densify(std::vector<std::size_t>& labels) {
  std::vector<std::size_t> remap;
  std::vector<std::size_t> seen;
  for (auto& l : labels) {
    if (l >= seen.size()) seen.resize(l + 1, static_cast<std::size_t>(-1));
    if (seen[l] == static_cast<std::size_t>(-1)) seen[l] = remap.size(), remap.push_back(l);
    l = seen[l];
  }
  return remap.size();
}

void floyd_warshall(std::vector<double>& w, std::size_t m) {
  for (std::size_t k = 0; k < m; ++k) {
    const double* rk = w.data() + k * m;
    for (std::size_t i = 0; i < m; ++i) {
      double* ri = w.data() + i * m;
      const double dik = ri[k];
      if (dik == kInfinity) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const double via = dik + rk[j];
        if (via < ri[j]) ri[j] = via;
      }
    }
  }
}

}  // namespace

Correspondence Quotient::correspondence() const {
  Correspondence r;
  r.pairs.reserve(projection.size());
  for (std::size_t i = 0; i < projection.size(); ++i) r.pairs.emplace_back(i, projection[i]);
  return r;
}

Quotient merge_quotient(const std::vector<PointId>& ids, const std::vector<double>& weights,
                        const std::vector<std::size_t>& classes) {
  const std::size_t n = ids.size();
  if (weights.size() != n * n || classes.size() != n) {
    throw Error(ErrorKind::InvalidSpace, "quotient input has inconsistent sizes");
  }
  std::vector<std::size_t> label = classes;
  std::size_t m = densify(label);
  std::vector<double> w;
  for (;;) {
    w.assign(m * m, kInfinity);
    for (std::size_t a = 0; a < m; ++a) w[a * m + a] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double& cell = w[label[i] * m + label[j]];
        cell = std::min(cell, weights[i * n + j]);
      }
    }
    floyd_warshall(w, m);
    DisjointSets sets(m);
    bool merged = false;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (w[a * m + b] < kTolerance) merged |= sets.unite(a, b);
    if (!merged) break;
    for (auto& l : label) l = sets.find(l);
    m = densify(label);
  }
  for (double d : w) {
    if (d == kInfinity) throw Error(ErrorKind::DisconnectedGraph, "quotient of a disconnected space");
  }
  // Symmetrize against round-off from the relaxation order.
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) w[a * m + b] = w[b * m + a] = std::min(w[a * m + b], w[b * m + a]);

  std::vector<PointId> names(m);
  std::vector<char> named(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto l = label[i];
    if (!named[l] || ids[i] < names[l]) names[l] = ids[i], named[l] = 1;
  }
  return Quotient{FiniteLengthSpace(std::move(names), std::move(w)), std::move(label)};
}

std::vector<PointId> disjoint_ids(const std::vector<PointId>& first, const std::vector<PointId>& second) {
  std::unordered_set<PointId> taken(first.begin(), first.end());
  std::vector<PointId> out;
  out.reserve(second.size());
  // Reserve the untouched ids of `second` first so a rename never lands on one.
  std::unordered_set<PointId> own(second.begin(), second.end());
  for (const auto& id : second) {
    PointId name = id;
    if (taken.count(name)) {
      do name += '\''; while (taken.count(name) || own.count(name));
    }
    taken.insert(name);
    out.push_back(std::move(name));
  }
  return out;
}

WedgeSum wedge_sum(const FiniteLengthSpace& x, std::size_t p, const FiniteLengthSpace& y, std::size_t q) {
  if (p >= x.size() || q >= y.size()) throw Error(ErrorKind::PointNotInSpace, "wedge point outside its space");
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t n = nx + ny;
  std::vector<PointId> ids = x.points();
  auto renamed = disjoint_ids(x.points(), y.points());
  ids.insert(ids.end(), renamed.begin(), renamed.end());

  std::vector<double> weights(n * n, kInfinity);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) weights[i * n + j] = x(i, j);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j) weights[(nx + i) * n + nx + j] = y(i, j);

  std::vector<std::size_t> classes(n);
  std::iota(classes.begin(), classes.end(), 0);
  classes[nx + q] = p;

  auto quotient = merge_quotient(ids, weights, classes);
  WedgeSum out{std::move(quotient.space), {}, {}, quotient.projection[p]};
  out.left.assign(quotient.projection.begin(), quotient.projection.begin() + static_cast<std::ptrdiff_t>(nx));
  out.right.assign(quotient.projection.begin() + static_cast<std::ptrdiff_t>(nx), quotient.projection.end());
  return out;
}

Quotient two_point_identification(const FiniteLengthSpace& x, std::size_t p, std::size_t q) {
  if (p >= x.size() || q >= x.size()) throw Error(ErrorKind::PointNotInSpace, "identified point outside the space");
  if (p == q) throw Error(ErrorKind::SamePoint, "cannot identify '" + x.id(p) + "' with itself");
  std::vector<std::size_t> classes(x.size());
  std::iota(classes.begin(), classes.end(), 0);
  classes[q] = p;
  return merge_quotient(x.points(), x.matrix(), classes);
}

Quotient collapse_subset(const FiniteLengthSpace& x, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "collapse of an empty subset");
  std::vector<char> in(x.size(), 0);
  for (auto s : subset) {
    if (s >= x.size()) throw Error(ErrorKind::PointNotInSpace, "collapsed point outside the space");
    in[s] = 1;
  }
  if (std::count(in.begin(), in.end(), 1) == static_cast<std::ptrdiff_t>(x.size())) {
    throw Error(ErrorKind::FullSubset, "collapse of the whole space");
  }
  std::vector<std::size_t> classes(x.size());
  std::iota(classes.begin(), classes.end(), 0);
  for (auto s : subset) classes[s] = subset.front();
  return merge_quotient(x.points(), x.matrix(), classes);
}

ComponentCollapse collapse_components(const MetricGraph& graph, std::span<const std::size_t> keep, double delta) {
  if (keep.empty()) throw Error(ErrorKind::EmptySubset, "collapse_components needs a nonempty keep set");
  const auto space = shortest_path_metric(graph);
  const std::size_t n = graph.vertex_count();
  std::vector<char> kept(n, 0);
  for (auto k : keep) {
    if (k >= n) throw Error(ErrorKind::PointNotInSpace, "keep vertex outside the graph");
    kept[k] = 1;
  }
  const auto adj = graph.adjacency();
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> classes(n);
  std::iota(classes.begin(), classes.end(), 0);
  ComponentCollapse out;

  for (std::size_t start = 0; start < n; ++start) {
    if (kept[start] || visited[start]) continue;
    std::vector<std::size_t> component{start};
    std::vector<std::size_t> boundary;
    visited[start] = 1;
    for (std::size_t head = 0; head < component.size(); ++head) {
      for (auto [w, len] : adj[component[head]]) {
        if (kept[w]) {
          if (std::find(boundary.begin(), boundary.end(), w) == boundary.end()) boundary.push_back(w);
        } else if (!visited[w]) {
          visited[w] = 1;
          component.push_back(w);
        }
      }
    }
    if (boundary.size() != 1) {
      throw Error(ErrorKind::BadBoundary, "component containing '" + graph.id(start) + "' meets the kept set in " +
                                              std::to_string(boundary.size()) + " vertices");
    }
    const std::size_t anchor = boundary.front();
    double diam = 0.0;
    for (auto a : component) {
      diam = std::max(diam, space(a, anchor));
      for (auto b : component) diam = std::max(diam, space(a, b));
    }
    if (diam < delta) {
      for (auto a : component) classes[a] = anchor;
      std::sort(component.begin(), component.end());
      out.components.push_back(std::move(component));
      out.attachments.push_back(anchor);
    }
  }
  out.quotient = merge_quotient(space.points(), space.matrix(), classes);
  out.correspondence = out.quotient.correspondence();
  return out;
}

ComponentCollapse collapse_components(const FiniteLengthSpace& x, std::span<const std::size_t> keep, double delta) {
  return collapse_components(skeleton_graph(x), keep, delta);
}

}  // namespace ghl
