#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ghl/gromov_hausdorff.hpp"
#include "ghl/metric_space.hpp"

namespace ghl {

// A quotient space together with the projection from the source points.
struct Quotient {
  FiniteLengthSpace space;
  std::vector<std::size_t> projection;  // source index -> quotient index

  // Graph of the projection; valid because the projection is surjective.
  Correspondence correspondence() const;
};

struct WedgeSum {
  FiniteLengthSpace space;
  std::vector<std::size_t> left;   // X index -> wedge index
  std::vector<std::size_t> right;  // Y index -> wedge index
  std::size_t wedge_point = 0;
};

// Metric quotient of the weighted graph on `ids` (dense `weights`, infinity
// for "no edge") by the partition `classes` (class label per vertex). Labels
// are dense 0..m-1. Quotient distances are shortest paths in the merged graph;
// classes that end up closer than kTolerance are merged as well. Each merged
// point takes the lexicographically smallest member id, and points appear in
// order of first member.
Quotient merge_quotient(const std::vector<PointId>& ids, const std::vector<double>& weights,
                        const std::vector<std::size_t>& classes);

// Cross distances run through the wedge point. Ids of Y that clash with ids of
// X get "'" appended.
WedgeSum wedge_sum(const FiniteLengthSpace& x, std::size_t p, const FiniteLengthSpace& y, std::size_t q);

// Ids of `second` renamed away from `first` the same way wedge_sum does.
std::vector<PointId> disjoint_ids(const std::vector<PointId>& first, const std::vector<PointId>& second);

Quotient two_point_identification(const FiniteLengthSpace& x, std::size_t p, std::size_t q);

Quotient collapse_subset(const FiniteLengthSpace& x, std::span<const std::size_t> subset);

struct ComponentCollapse {
  Quotient quotient;
  // Source-to-quotient projection graph; gh_upper_bound of it is <= delta.
  Correspondence correspondence;
  // Collapsed components; components[i] hangs from keep vertex attachments[i].
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> attachments;
};

// Collapses every connected component of graph - keep whose closure (the
// component plus its attachment vertex) has diameter < delta onto its
// attachment vertex. Each component must meet keep in exactly one vertex.
ComponentCollapse collapse_components(const MetricGraph& graph, std::span<const std::size_t> keep, double delta);

// Same, with the graph taken to be the metric skeleton of `x`.
ComponentCollapse collapse_components(const FiniteLengthSpace& x, std::span<const std::size_t> keep, double delta);

}  // namespace ghl
