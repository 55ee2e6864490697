#include <algorithm>
#include <chrono>
#include <future>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "ghl/constructions.hpp"
#include "ghl/error.hpp"
#include "ghl/gromov_hausdorff.hpp"
#include "ghl/harness.hpp"
#include "ghl/surgery.hpp"
#include "json.hpp"

namespace ghl {

namespace {

// Surgeries that come out degenerate are retried on a refined mesh this many
// times before giving up.
constexpr int kMaxAutoRefine = 2;

// F4 arms are this many segments per resolution step; F5 whiskers, as
// fractions of delta0.
constexpr int kArmSegmentsPerResolution = 4;
constexpr double kWhiskerFractions[] = {0.9, 0.6, 0.4, 0.27, 0.18, 0.12, 0.08, 0.05};


struct Outcome {
  double gh_upper = 0.0;
  int c_source = 0;
  int c_target = 0;
  double mesh_error = 0.0;
};

FiniteLengthSpace mesh_space(const SurfaceMesh& mesh) { return shortest_path_metric(mesh.edge_graph()); }

double link_diameter(const SurfaceMesh& mesh, std::size_t p) {
  const auto space = mesh_space(mesh);
  const auto& link = mesh.link(p);
  double best = 0.0;
  for (auto a : link)
    for (auto b : link) best = std::max(best, space(space.index_of(mesh.id(a)), space.index_of(mesh.id(b))));
  return best;
}

std::size_t pick(const SurfaceMesh& mesh, const std::optional<PointId>& wanted, std::size_t fallback) {
  return wanted ? mesh.index_of(*wanted) : fallback;
}

// Farthest vertex from p with a link as long as p's; ties to the lower index.
std::size_t handle_partner(const SurfaceMesh& mesh, std::size_t p) {
  const auto space = mesh_space(mesh);
  const auto sp = space.index_of(mesh.id(p));
  std::size_t best = p;
  double far = -1.0;
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (v == p || mesh.link(v).size() != mesh.link(p).size()) continue;
    const double d = space(sp, space.index_of(mesh.id(v)));
    if (d > far + kTolerance) {
      far = d;
      best = v;
    }
  }
  if (best == p) throw Error(ErrorKind::LinkMismatch, "no handle partner with a matching link");
  return best;
}

// Correspondence from the source onto the target: region points go to
// `anchor`, everything else through `target_of` by id.
Correspondence by_id(const FiniteLengthSpace& source, const std::vector<PointId>& region, std::size_t anchor,
                     const std::unordered_map<PointId, std::size_t>& target_of) {
  std::unordered_set<PointId> in_region(region.begin(), region.end());
  Correspondence r;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto& id = source.id(i);
    if (in_region.count(id)) {
      r.pairs.emplace_back(i, anchor);
    } else {
      auto it = target_of.find(id);
      if (it == target_of.end()) throw Error(ErrorKind::InvalidCorrespondence, "source point '" + id + "' has no image");
      r.pairs.emplace_back(i, it->second);
    }
  }
  return r;
}

template <class Build>
Outcome with_refinement(std::vector<SurfaceMesh> meshes, Build build) {
  for (int attempt = 0;; ++attempt) {
    try {
      return build(meshes);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateNeck || attempt == kMaxAutoRefine) throw;
      for (auto& m : meshes) m = refine(m);
    }
  }
}

class Runner {
 public:
  explicit Runner(const FamilySpec& spec) : spec_(spec) {
    switch (spec.family) {
      case Family::F1: {
        meshes_ = {make_surface(spec.first, spec.resolution), make_surface(spec.second, spec.resolution)};
        const auto p1 = pick(meshes_[0], spec.p, 0);
        const auto p2 = pick(meshes_[1], spec.q, 0);
        ids_ = {meshes_[0].id(p1), meshes_[1].id(p2)};
        link_diameter_ = std::min(link_diameter(meshes_[0], p1), link_diameter(meshes_[1], p2));
        break;
      }
      case Family::F2: {
        meshes_ = {make_surface(spec.first, spec.resolution)};
        const auto p = pick(meshes_[0], spec.p, 0);
        const auto q = spec.q ? meshes_[0].index_of(*spec.q) : handle_partner(meshes_[0], p);
        ids_ = {meshes_[0].id(p), meshes_[0].id(q)};
        link_diameter_ = std::min(link_diameter(meshes_[0], p), link_diameter(meshes_[0], q));
        break;
      }
      case Family::F3: {
        meshes_ = {make_surface(spec.first, spec.resolution)};
        const auto p = pick(meshes_[0], spec.p, 0);
        ids_ = {meshes_[0].id(p)};
        link_diameter_ = link_diameter(meshes_[0], p);
        break;
      }
      case Family::F4: build_star(); break;
      case Family::F5: build_whiskers(); break;
    }
    delta0_ = spec.delta0.value_or(spec.family == Family::F5 ? 1.0 : link_diameter_ / 2.0);
    if (spec.family != Family::F4 && !(delta0_ > 0.0)) throw Error(ErrorKind::InvalidSpace, "delta0 must be positive");
  }

  ConvergenceRow row(int n) const {
    const auto start = std::chrono::steady_clock::now();
    ConvergenceRow out;
    out.n = n;
    out.delta_n = spec_.family == Family::F4 ? 0.0 : delta0_ / n;
    Outcome o;
    switch (spec_.family) {
      case Family::F1: o = f1(out.delta_n); break;
      case Family::F2: o = f2(out.delta_n); break;
      case Family::F3: o = f3(out.delta_n); break;
      case Family::F4: o = f4(n, out.delta_n); break;
      case Family::F5: o = f5(out.delta_n); break;
    }
    out.gh_upper = o.gh_upper;
    out.c_source = o.c_source;
    out.c_target_model = o.c_target;
    out.mesh_error = o.mesh_error;
    if (spec_.record_timing) {
      out.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
  }

 private:
  void observe(std::string_view label, const FiniteLengthSpace& space) const {
    if (!spec_.on_space) return;
    std::lock_guard lock(observe_mutex_);
    spec_.on_space(label, space);
  }

  Outcome f1(double delta) const {
    return with_refinement(meshes_, [&](const std::vector<SurfaceMesh>& m) {
      const auto p1 = m[0].index_of(ids_[0]);
      const auto p2 = m[1].index_of(ids_[1]);
      auto sum = connected_sum(m[0], p1, m[1], p2, delta / link_diameter_);
      const auto source = mesh_space(sum.mesh);
      const auto x1 = mesh_space(m[0]);
      const auto x2 = mesh_space(m[1]);
      const auto wedge = wedge_sum(x1, x1.index_of(ids_[0]), x2, x2.index_of(ids_[1]));
      std::unordered_map<PointId, std::size_t> target_of;
      for (std::size_t v = 0; v < m[0].vertex_count(); ++v)
        if (v != p1) target_of[m[0].id(v)] = wedge.left[x1.index_of(m[0].id(v))];
      for (std::size_t v = 0; v < m[1].vertex_count(); ++v)
        if (v != p2) target_of[sum.second_ids[v]] = wedge.right[x2.index_of(m[1].id(v))];
      observe("F1 source", source);
      observe("F1 target", wedge.space);
      const auto r = by_id(source, sum.region, wedge.wedge_point, target_of);
      return Outcome{gh_upper_bound(r, source, wedge.space), connectivity_number(sum.mesh),
                     connectivity_number(m[0]) + connectivity_number(m[1]), sum.mesh.max_edge_length()};
    });
  }

  Outcome f2(double delta) const {
    return with_refinement(meshes_, [&](const std::vector<SurfaceMesh>& m) {
      const auto p = m[0].index_of(ids_[0]);
      const auto q = m[0].index_of(ids_[1]);
      auto handle = attach_handle(m[0], p, q, delta / link_diameter_);
      const auto source = mesh_space(handle.mesh);
      const auto x = mesh_space(m[0]);
      const auto glued = two_point_identification(x, x.index_of(ids_[0]), x.index_of(ids_[1]));
      std::unordered_map<PointId, std::size_t> target_of;
      for (std::size_t i = 0; i < x.size(); ++i) target_of[x.id(i)] = glued.projection[i];
      observe("F2 source", source);
      observe("F2 target", glued.space);
      const auto r = by_id(source, handle.region, glued.projection[x.index_of(ids_[0])], target_of);
      return Outcome{gh_upper_bound(r, source, glued.space), connectivity_number(handle.mesh),
                     connectivity_number(m[0]), handle.mesh.max_edge_length()};
    });
  }

  Outcome f3(double delta) const {
    return with_refinement(meshes_, [&](const std::vector<SurfaceMesh>& m) {
      const auto p = m[0].index_of(ids_[0]);
      auto sum = wedge_tiny_surface(m[0], p, spec_.tiny, delta);
      const auto source = mesh_space(sum.mesh);
      const auto x = mesh_space(m[0]);
      std::unordered_map<PointId, std::size_t> target_of;
      for (std::size_t i = 0; i < x.size(); ++i) target_of[x.id(i)] = i;
      observe("F3 source", source);
      observe("F3 target", x);
      const auto r = by_id(source, sum.region, x.index_of(ids_[0]), target_of);
      return Outcome{gh_upper_bound(r, source, x), connectivity_number(sum.mesh), connectivity_number(m[0]),
                     sum.mesh.max_edge_length()};
    });
  }

  Outcome f4(int n, double& delta) const {
    const std::vector<std::size_t> net(net_order_.order.begin(), net_order_.order.begin() + n);
    delta = net_order_.radii[static_cast<std::size_t>(n) - 1];
    const auto sub = restrict(*space_, net);
    observe("F4 net", sub);
    const auto r = nearest_point_correspondence(*space_, net);
    return Outcome{gh_upper_bound(r, *space_, sub), 0, 0, graph_->max_edge_length()};
  }

  Outcome f5(double delta) const {
    auto collapse = collapse_components(*graph_, keep_, delta);
    observe("F5 collapsed", collapse.quotient.space);
    return Outcome{gh_upper_bound(collapse.correspondence, *space_, collapse.quotient.space), 0, 0,
                   graph_->max_edge_length()};
  }

  // Three arms of length 1 from "o", each cut into equal segments; "o" is
  // point 0, so farthest-point sampling starts at the centre.
  void build_star() {
    const int segments = kArmSegmentsPerResolution * spec_.resolution;
    std::vector<PointId> ids{"o"};
    std::vector<std::tuple<PointId, PointId, double>> edges;
    for (int arm = 0; arm < 3; ++arm) {
      PointId prev = "o";
      for (int s = 1; s <= segments; ++s) {
        PointId id = "a" + std::to_string(arm) + "_" + std::to_string(s);
        ids.push_back(id);
        edges.emplace_back(prev, id, 1.0 / segments);
        prev = id;
      }
    }
    graph_ = MetricGraph(ids, edges);
    space_ = shortest_path_metric(*graph_);
    observe("F4 tree", *space_);
    if (static_cast<std::size_t>(spec_.n_max) > space_->size()) {
      throw Error(ErrorKind::TooLarge, "n_max exceeds the number of tree points");
    }
    net_order_ = farthest_point_order(*space_, static_cast<std::size_t>(spec_.n_max));
  }

  // Sphere edge graph plus two-edge whiskers of geometric lengths hung from
  // distinct vertices chosen by the seed.
  void build_whiskers() {
    const double delta0 = spec_.delta0.value_or(1.0);
    const auto sphere = make_surface(spec_.first, spec_.resolution);
    std::vector<std::size_t> anchors(sphere.vertex_count());
    std::iota(anchors.begin(), anchors.end(), std::size_t{0});
    std::mt19937_64 rng(spec_.seed);
    std::shuffle(anchors.begin(), anchors.end(), rng);
    std::vector<PointId> ids = sphere.vertices();
    std::vector<std::tuple<PointId, PointId, double>> edges;
    for (const auto& e : sphere.edges()) edges.emplace_back(sphere.id(e.u), sphere.id(e.v), e.length);
    const std::size_t count = std::min(std::size(kWhiskerFractions), anchors.size());
    for (std::size_t w = 0; w < count; ++w) {
      const double half = delta0 * kWhiskerFractions[w] / 2.0;
      const PointId mid = "w" + std::to_string(w) + "_1";
      const PointId tip = "w" + std::to_string(w) + "_2";
      ids.push_back(mid);
      ids.push_back(tip);
      edges.emplace_back(sphere.id(anchors[w]), mid, half);
      edges.emplace_back(mid, tip, half);
    }
    graph_ = MetricGraph(ids, edges);
    space_ = shortest_path_metric(*graph_);
    observe("F5 source", *space_);
    keep_.resize(sphere.vertex_count());
    std::iota(keep_.begin(), keep_.end(), std::size_t{0});
  }

  const FamilySpec& spec_;
  std::vector<SurfaceMesh> meshes_;
  std::vector<PointId> ids_;
  double link_diameter_ = 0.0;
  double delta0_ = 0.0;
  std::optional<MetricGraph> graph_;
  std::optional<FiniteLengthSpace> space_;
  FarthestPointOrder net_order_;
  std::vector<std::size_t> keep_;
  mutable std::mutex observe_mutex_;
};

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
    case Family::F4: return "F4";
    case Family::F5: return "F5";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (auto f : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

std::vector<ConvergenceRow> run_family(const FamilySpec& spec) {
  if (spec.n_max < 2) throw Error(ErrorKind::InvalidSpace, "n_max must be at least 2");
  std::vector<ConvergenceRow> rows;
  auto context = [&](int n, auto&& body) {
    try {
      return body();
    } catch (const Error& e) {
      const std::string where = std::string(to_string(spec.family)) + (n > 0 ? " n=" + std::to_string(n) : "");
      throw Error(e.kind(), where + ": " + e.message());
    }
  };
  const Runner runner = context(0, [&] { return Runner(spec); });
  if (spec.parallel) {
    std::vector<std::future<ConvergenceRow>> jobs;
    for (int n = 1; n <= spec.n_max; ++n) {
      jobs.push_back(std::async(std::launch::async, [&, n] { return context(n, [&] { return runner.row(n); }); }));
    }
    for (auto& j : jobs) rows.push_back(j.get());
  } else {
    for (int n = 1; n <= spec.n_max; ++n) rows.push_back(context(n, [&] { return runner.row(n); }));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  return rows;
}

FamilySpec parse_family_spec(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::IoError, std::string("malformed family spec: ") + e.what());
  }
  try {
    FamilySpec spec;
    auto kind = [&](const char* key, SurfaceKind fallback) {
      if (!doc.contains(key)) return fallback;
      auto k = parse_surface_kind(doc.at(key).get<std::string>());
      if (!k) throw Error(ErrorKind::IoError, std::string("unknown surface kind in '") + key + "'");
      return *k;
    };
    if (doc.contains("family")) {
      auto f = parse_family(doc.at("family").get<std::string>());
      if (!f) throw Error(ErrorKind::IoError, "unknown family");
      spec.family = *f;
    }
    spec.n_max = doc.value("n_max", spec.n_max);
    spec.resolution = doc.value("resolution", spec.resolution);
    spec.first = kind("first", spec.first);
    spec.second = kind("second", spec.second);
    spec.tiny = kind("tiny", spec.tiny);
    if (doc.contains("p")) spec.p = doc.at("p").get<std::string>();
    if (doc.contains("q")) spec.q = doc.at("q").get<std::string>();
    if (doc.contains("delta0")) spec.delta0 = doc.at("delta0").get<double>();
    spec.seed = doc.value("seed", spec.seed);
    spec.record_timing = doc.value("record_timing", spec.record_timing);
    spec.parallel = doc.value("parallel", spec.parallel);
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, std::string("bad family spec: ") + e.what());
  }
}

}  // namespace ghl
