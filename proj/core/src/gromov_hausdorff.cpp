#include "ghl/gromov_hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "ghl/error.hpp"

namespace ghl {

namespace {

void check_map(const MapWitness& f, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  if (f.table.size() != x.size()) {
    throw Error(ErrorKind::PointNotInSpace, "map is not total on the source space");
  }
  for (auto target : f.table) {
    if (target >= y.size()) throw Error(ErrorKind::PointNotInSpace, "map image outside the target space");
  }
}

double pair_distortion(const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const FiniteLengthSpace& x,
                       const FiniteLengthSpace& y) {
  double worst = 0.0;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      double gap = std::abs(x(pairs[a].first, pairs[b].first) - y(pairs[a].second, pairs[b].second));
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

double exhaustive_gh(const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  const std::size_t nx = x.size();
  const std::size_t ny = y.size();
  const std::size_t cells = nx * ny;
  // discrepancy[a][b] for product cells a = i*ny + j.
  std::vector<double> gap(cells * cells);
  for (std::size_t a = 0; a < cells; ++a)
    for (std::size_t b = 0; b < cells; ++b)
      gap[a * cells + b] = std::abs(x(a / ny, b / ny) - y(a % ny, b % ny));

  double best = kInfinity;
  std::vector<std::size_t> members;
  const std::uint32_t full_x = (1u << nx) - 1;
  const std::uint32_t full_y = (1u << ny) - 1;
  for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
    std::uint32_t seen_x = 0;
    std::uint32_t seen_y = 0;
    members.clear();
    for (std::size_t a = 0; a < cells; ++a) {
      if (mask & (1u << a)) {
        seen_x |= 1u << (a / ny);
        seen_y |= 1u << (a % ny);
        members.push_back(a);
      }
    }
    if (seen_x != full_x || seen_y != full_y) continue;
    double worst = 0.0;
    for (std::size_t s = 0; s < members.size() && worst < best; ++s)
      for (std::size_t t = s + 1; t < members.size(); ++t)
        worst = std::max(worst, gap[members[s] * cells + members[t]]);
    best = std::min(best, worst);
  }
  return best / 2.0;
}

class CoverSearch {
 public:
  CoverSearch(const FiniteLengthSpace& x, const FiniteLengthSpace& y) : x_(x), y_(y), nx_(x.size()), ny_(y.size()) {
    std::vector<std::pair<std::size_t, std::size_t>> product;
    for (std::size_t i = 0; i < nx_; ++i)
      for (std::size_t j = 0; j < ny_; ++j) product.emplace_back(i, j);
    best_ = pair_distortion(product, x_, y_);
    cover_x_.assign(nx_, 0);
    cover_y_.assign(ny_, 0);
  }

  double run() {
    descend(0.0);
    return best_ / 2.0;
  }

 private:
  double gap(std::pair<std::size_t, std::size_t> p, std::pair<std::size_t, std::size_t> q) const {
    return std::abs(x_(p.first, q.first) - y_(p.second, q.second));
  }

  // Partial distortion after adding `cand`, or early-out once it reaches best_.
  double extended(std::pair<std::size_t, std::size_t> cand, double current) const {
    double worst = current;
    for (const auto& p : chosen_) {
      worst = std::max(worst, gap(p, cand));
      if (worst >= best_) break;
    }
    return worst;
  }

  void descend(double current) {
    // First uncovered point, X before Y.
    std::size_t ux = nx_;
    std::size_t uy = ny_;
    for (std::size_t i = 0; i < nx_ && ux == nx_; ++i)
      if (!cover_x_[i]) ux = i;
    if (ux == nx_)
      for (std::size_t j = 0; j < ny_ && uy == ny_; ++j)
        if (!cover_y_[j]) uy = j;
    if (ux == nx_ && uy == ny_) {
      best_ = std::min(best_, current);
      return;
    }

    struct Option {
      double value;
      std::pair<std::size_t, std::size_t> pair;
    };
    std::vector<Option> options;
    if (ux != nx_) {
      for (std::size_t j = 0; j < ny_; ++j) options.push_back({extended({ux, j}, current), {ux, j}});
    } else {
      for (std::size_t i = 0; i < nx_; ++i) options.push_back({extended({i, uy}, current), {i, uy}});
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const Option& a, const Option& b) { return a.value < b.value; });
    for (const auto& opt : options) {
      if (opt.value >= best_) break;
      chosen_.push_back(opt.pair);
      ++cover_x_[opt.pair.first];
      ++cover_y_[opt.pair.second];
      descend(opt.value);
      --cover_x_[opt.pair.first];
      --cover_y_[opt.pair.second];
      chosen_.pop_back();
    }
  }

  const FiniteLengthSpace& x_;
  const FiniteLengthSpace& y_;
  std::size_t nx_;
  std::size_t ny_;
  double best_ = kInfinity;
  std::vector<std::pair<std::size_t, std::size_t>> chosen_;
  std::vector<int> cover_x_;
  std::vector<int> cover_y_;
};

}  // namespace

void validate(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  std::vector<char> hit_x(x.size(), 0);
  std::vector<char> hit_y(y.size(), 0);
  for (auto [a, b] : r.pairs) {
    if (a >= x.size() || b >= y.size()) {
      throw Error(ErrorKind::PointNotInSpace, "correspondence references a point outside its spaces");
    }
    hit_x[a] = 1;
    hit_y[b] = 1;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!hit_x[i]) throw Error(ErrorKind::InvalidCorrespondence, "point '" + x.id(i) + "' of X is unrelated");
  for (std::size_t j = 0; j < y.size(); ++j)
    if (!hit_y[j]) throw Error(ErrorKind::InvalidCorrespondence, "point '" + y.id(j) + "' of Y is unrelated");
}

double distortion(const MapWitness& f, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  check_map(f, x, y);
  double worst = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      worst = std::max(worst, std::abs(y(f.table[a], f.table[b]) - x(a, b)));
  return worst;
}

double distortion(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  validate(r, x, y);
  return pair_distortion(r.pairs, x, y);
}

bool is_eps_net(std::span<const std::size_t> subset, const FiniteLengthSpace& x, double eps) {
  for (auto s : subset) {
    if (s >= x.size()) throw Error(ErrorKind::PointNotInSpace, "net point outside the space");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool covered = false;
    for (auto s : subset) {
      if (x(i, s) <= eps + kTolerance) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool is_eps_isometry(const MapWitness& f, const FiniteLengthSpace& x, const FiniteLengthSpace& y, double eps) {
  if (distortion(f, x, y) > eps + kTolerance) return false;
  return is_eps_net(f.table, y, eps);
}

double gh_upper_bound(const Correspondence& r, const FiniteLengthSpace& x, const FiniteLengthSpace& y) {
  return distortion(r, x, y) / 2.0;
}

Correspondence graph_of(const MapWitness& f, std::vector<std::size_t>& image) {
  image = f.table;
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  Correspondence r;
  r.pairs.reserve(f.table.size());
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    auto pos = std::lower_bound(image.begin(), image.end(), f.table[i]) - image.begin();
    r.pairs.emplace_back(i, static_cast<std::size_t>(pos));
  }
  return r;
}

double gh_bruteforce(const FiniteLengthSpace& x, const FiniteLengthSpace& y, GhSearch mode) {
  const std::size_t cells = x.size() * y.size();
  if (mode == GhSearch::Auto) mode = cells <= kExhaustiveCap ? GhSearch::Exhaustive : GhSearch::BranchAndBound;
  if (mode == GhSearch::Exhaustive && cells > kExhaustiveCap) {
    throw Error(ErrorKind::TooLarge, "exhaustive search is capped at |X||Y| <= 16, got " + std::to_string(cells));
  }
  if (mode == GhSearch::BranchAndBound && cells > kBranchAndBoundCap) {
    throw Error(ErrorKind::TooLarge, "branch-and-bound is capped at |X||Y| <= 36, got " + std::to_string(cells));
  }
  if (mode == GhSearch::Exhaustive) return exhaustive_gh(x, y);
  return CoverSearch(x, y).run();
}

FarthestPointOrder farthest_point_order(const FiniteLengthSpace& x, std::size_t count) {
  FarthestPointOrder out;
  const std::size_t n = x.size();
  count = std::min(count, n);
  if (count == 0) return out;
  std::vector<double> reach(n, kInfinity);
  std::size_t next = 0;
  for (std::size_t step = 0; step < count; ++step) {
    out.order.push_back(next);
    auto row = x.row(next);
    for (std::size_t i = 0; i < n; ++i) reach[i] = std::min(reach[i], row[i]);
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (reach[i] > reach[far]) far = i;
    out.radii.push_back(reach[far]);
    next = far;
  }
  return out;
}

std::vector<std::size_t> greedy_eps_net(const FiniteLengthSpace& x, double eps) {
  auto fps = farthest_point_order(x, x.size());
  std::size_t take = fps.order.size();
  for (std::size_t i = 0; i < fps.radii.size(); ++i) {
    if (fps.radii[i] <= eps) {
      take = i + 1;
      break;
    }
  }
  fps.order.resize(take);
  return fps.order;
}

Correspondence nearest_point_correspondence(const FiniteLengthSpace& x, std::span<const std::size_t> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "projection onto an empty subset");
  Correspondence r;
  r.pairs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < subset.size(); ++s)
      if (x(i, subset[s]) < x(i, subset[best])) best = s;
    r.pairs.emplace_back(i, best);
  }
  return r;
}

}  // namespace ghl
