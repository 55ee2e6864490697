#include "ghl/blocks.hpp"

#include <algorithm>
#include <string>

#include "ghl/error.hpp"

namespace ghl {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Hopcroft-Tarjan lowpoint search with an explicit stack; edges are stacked so
// blocks come out as edge sets.
struct Biconnected {
  explicit Biconnected(const MetricGraph& g) : graph(g), n(g.vertex_count()) {
    incident.assign(n, {});
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      incident[edges[e].u].push_back(e);
      incident[edges[e].v].push_back(e);
    }
    order.assign(n, kNone);
    low.assign(n, 0);
    is_cut.assign(n, 0);
  }

  std::size_t other(std::size_t e, std::size_t v) const {
    const auto& edge = graph.edges()[e];
    return edge.u == v ? edge.v : edge.u;
  }

  void run() {
    struct Frame {
      std::size_t v;
      std::size_t parent_edge;
      std::size_t next = 0;
      int children = 0;
    };
    std::vector<Frame> stack;
    std::size_t clock = 0;
    order[0] = low[0] = clock++;
    stack.push_back({0, kNone});
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < incident[f.v].size()) {
        const std::size_t e = incident[f.v][f.next++];
        if (e == f.parent_edge) continue;
        const std::size_t w = other(e, f.v);
        if (order[w] == kNone) {
          edge_stack.push_back(e);
          order[w] = low[w] = clock++;
          ++f.children;
          stack.push_back({w, e});
        } else if (order[w] < order[f.v]) {
          edge_stack.push_back(e);
          low[f.v] = std::min(low[f.v], order[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) is_cut[done.v] = 1;
        break;
      }
      auto& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (low[done.v] >= order[parent.v]) {
        if (parent.parent_edge != kNone) is_cut[parent.v] = 1;
        std::vector<std::size_t> block;
        for (;;) {
          const std::size_t e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e);
          if (e == done.parent_edge) break;
        }
        blocks.push_back(std::move(block));
      }
    }
  }

  const MetricGraph& graph;
  std::size_t n;
  std::vector<std::vector<std::size_t>> incident;
  std::vector<std::size_t> order;
  std::vector<std::size_t> low;
  std::vector<char> is_cut;
  std::vector<std::size_t> edge_stack;
  std::vector<std::vector<std::size_t>> blocks;
};

void require_connected(const MetricGraph& graph) {
  if (graph.vertex_count() == 0 || !graph.connected()) {
    throw Error(ErrorKind::DisconnectedGraph, "block structure needs a connected graph");
  }
}

}  // namespace

std::size_t BlockTree::find_block(const std::vector<std::size_t>& wanted) const {
  if (wanted.size() < 2) return kNone;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& vs = blocks[b].vertices;
    bool all = std::all_of(wanted.begin(), wanted.end(),
                           [&](std::size_t v) { return std::binary_search(vs.begin(), vs.end(), v); });
    if (all) return b;
  }
  return kNone;
}

std::vector<std::size_t> cut_vertices(const MetricGraph& graph) {
  require_connected(graph);
  Biconnected search(graph);
  search.run();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    if (search.is_cut[v]) out.push_back(v);
  return out;
}

BlockTree block_decomposition(const MetricGraph& graph) {
  require_connected(graph);
  Biconnected search(graph);
  search.run();
  BlockTree tree;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v)
    if (search.is_cut[v]) tree.cut_vertices.push_back(v);
  for (auto& edges : search.blocks) {
    BlockTree::Block block;
    std::sort(edges.begin(), edges.end());
    for (auto e : edges) {
      block.vertices.push_back(graph.edges()[e].u);
      block.vertices.push_back(graph.edges()[e].v);
    }
    std::sort(block.vertices.begin(), block.vertices.end());
    block.vertices.erase(std::unique(block.vertices.begin(), block.vertices.end()), block.vertices.end());
    block.bridge = edges.size() == 1;
    block.edges = std::move(edges);
    tree.blocks.push_back(std::move(block));
  }
  // Deterministic order: by smallest edge index.
  std::sort(tree.blocks.begin(), tree.blocks.end(),
            [](const BlockTree::Block& a, const BlockTree::Block& b) { return a.edges.front() < b.edges.front(); });
  for (std::size_t b = 0; b < tree.blocks.size(); ++b)
    for (auto v : tree.blocks[b].vertices)
      if (search.is_cut[v]) tree.adjacency.emplace_back(b, v);
  return tree;
}

CactoidReport cactoid_check(const BlockTree& tree, const std::map<std::size_t, BlockTag>& tags) {
  CactoidReport report;
  bool all_surfaces = true;
  for (std::size_t b = 0; b < tree.blocks.size(); ++b) {
    if (tree.blocks[b].bridge) continue;
    auto it = tags.find(b);
    if (it == tags.end()) throw Error(ErrorKind::MissingTag, "block " + std::to_string(b) + " has no tag");
    const auto& tag = it->second;
    if (tag.kind == BlockTagKind::NonSurface) {
      all_surfaces = false;
    } else if (tag.kind == BlockTagKind::Surface && tag.c != 0) {
      ++report.non_sphere_count;
    }
  }
  report.is_generalized_cactoid = all_surfaces;
  report.is_cactoid = all_surfaces && report.non_sphere_count == 0;
  return report;
}

}  // namespace ghl
