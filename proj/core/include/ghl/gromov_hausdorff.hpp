#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ghl/metric_space.hpp"

namespace ghl {

// Total map X -> Y; table[i] is the image of point i of X.
struct MapWitness {
  std::vector<std::size_t> table;
};

// Relation between X and Y, stored as index pairs (x, y). A valid
// correspondence has both projections surjective.
struct Correspondence {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Throws PointNotInSpace for out-of-range indices, InvalidCorrespondence when
// a projection misses a point.
void validate(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y);

// sup |d_Y(f a, f b) - d_X(a, b)|.
double distortion(const MapWitness& f, const FiniteLengthSpace& x, const FiniteLengthSpace& y);

// sup over related pairs (a, b), (a', b') of |d_X(a, a') - d_Y(b, b')|.
double distortion(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y);

bool is_eps_net(std::span<const std::size_t> subset, const FiniteLengthSpace& x, double eps);

// dis(f) <= eps and f(X) is an eps-net in Y.
bool is_eps_isometry(const MapWitness& f, const FiniteLengthSpace& x, const FiniteLengthSpace& y, double eps);

// d_GH(X, Y) <= dis(R) / 2.
double gh_upper_bound(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y);

// Graph of f as a correspondence onto its image; `image` receives the sorted
// image indices and the pairs are re-indexed into restrict(Y, image).
Correspondence graph_of(const MapWitness& f, std::vector<std::size_t>& image);

enum class GhSearch { Auto, Exhaustive, BranchAndBound };

inline constexpr std::size_t kExhaustiveCap = 16;
inline constexpr std::size_t kBranchAndBoundCap = 36;

// Exact Gromov-Hausdorff distance of two tiny spaces: the minimum of dis(R)/2
// over all correspondences. Exhaustive mode walks every subset of X x Y
// (|X||Y| <= 16); branch-and-bound builds minimal covers and prunes against
// the incumbent (|X||Y| <= 36). Auto picks the former when it fits.
double gh_bruteforce(const FiniteLengthSpace& x, const FiniteLengthSpace& y, GhSearch mode = GhSearch::Auto);

struct FarthestPointOrder {
  std::vector<std::size_t> order;
  // radii[i]: covering radius of the first i + 1 points of `order`.
  std::vector<double> radii;
};

// Farthest-point sampling from index 0; ties go to the lowest index.
FarthestPointOrder farthest_point_order(const FiniteLengthSpace& x, std::size_t count);

// Smallest farthest-point prefix that is an eps-net.
std::vector<std::size_t> greedy_eps_net(const FiniteLengthSpace& x, double eps);

// Nearest-point projection onto `subset` (ties to the earlier subset entry),
// as a correspondence between X and restrict(X, subset).
Correspondence nearest_point_correspondence(const FiniteLengthSpace& x, std::span<const std::size_t> subset);

}  // namespace ghl
