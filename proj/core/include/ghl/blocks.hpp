#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "ghl/metric_space.hpp"

namespace ghl {

// Finite model of the arrangement of maximal cyclic subsets: biconnected
// components (blocks) of a graph and the cut vertices joining them.
struct BlockTree {
  struct Block {
    std::vector<std::size_t> vertices;  // sorted
    std::vector<std::size_t> edges;     // indices into MetricGraph::edges()
    bool bridge = false;                // a single edge; a tree part
  };
  std::vector<Block> blocks;
  std::vector<std::size_t> cut_vertices;  // sorted
  // (block index, cut vertex) incidences of the bipartite block-cut tree.
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;

  // Block whose vertex set contains all of `vertices` (>= 2 of them), if any.
  std::size_t find_block(const std::vector<std::size_t>& vertices) const;
};

std::vector<std::size_t> cut_vertices(const MetricGraph& graph);

BlockTree block_decomposition(const MetricGraph& graph);

enum class BlockTagKind { Sphere, Surface, NonSurface };

struct BlockTag {
  BlockTagKind kind = BlockTagKind::Sphere;
  int c = 0;  // connectivity number, for Surface
  bool orientable = true;
};

struct CactoidReport {
  bool is_generalized_cactoid = false;
  bool is_cactoid = false;
  int non_sphere_count = 0;
};

// Every non-bridge block needs a tag (MissingTag otherwise); bridges are tree
// parts. A surface tag with c == 0 counts as a sphere.
CactoidReport cactoid_check(const BlockTree& tree, const std::map<std::size_t, BlockTag>& tags);

}  // namespace ghl
