// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ghl/blocks.hpp"
#include "ghl/budget.hpp"
#include "ghl/constructions.hpp"
#include "ghl/cycle_quotient.hpp"
#include "ghl/error.hpp"
#include "ghl/gluing_script.hpp"
#include "ghl/gromov_hausdorff.hpp"
#include "ghl/harness.hpp"
#include "ghl/surgery.hpp"
#include "oracles.hpp"

using namespace ghl;

namespace {

constexpr double kTau = 1e-9;

// Every space built by criteria 1-7 passes through here; criterion 8 reads it.
struct Sweep {
  std::size_t seen = 0;
  std::size_t failed = 0;
  std::string first_failure;

  void operator()(std::string_view where, const FiniteLengthSpace& s) {
    ++seen;
    const bool ours = static_cast<bool>(check_metric_axioms(s, kTau));
    if (!ours || !oracle::metric_ok(s, kTau)) {
      if (failed++ == 0) first_failure = std::string(where);
    }
  }
} sweep;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

Outcome quotient_oracle() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto raw = oracle::random_connected_graph(rng, 2, 12, 0.1, 2.0);
    auto x = shortest_path_metric(oracle::to_graph(raw));
    sweep("c1 graph", x);
    const int p = static_cast<int>(rng() % raw.n);
    int q = static_cast<int>(rng() % (raw.n - 1));
    if (q >= p) ++q;
    auto glued = two_point_identification(x, p, q);
    sweep("c1 quotient", glued.space);
    const auto d = oracle::floyd_warshall(oracle::weight_matrix(raw));
    const auto zero_edge = oracle::identification_by_zero_edge(d, p, q);
    auto row = [&](int v) { return v < q ? v : v - 1; };
    for (int a = 0; a < raw.n; ++a)
      for (int b = 0; b < raw.n; ++b) {
        if (a == q || b == q) continue;
        const double got = glued.space(glued.projection[a], glued.projection[b]);
        worst = std::max(worst, std::abs(got - oracle::three_term(d, a, b, p, q)));
        worst = std::max(worst, std::abs(got - zero_edge[row(a)][row(b)]));
      }
  }
  return {worst <= 1e-9, "100 graphs, max |diff| " + fmt(worst)};
}

Outcome gh_sanity() {
  std::mt19937_64 rng(2);
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto x = oracle::random_space(rng, 1 + static_cast<int>(rng() % 4), 0.1, 2.0, "x");
    auto y = oracle::random_space(rng, 1 + static_cast<int>(rng() % 4), 0.1, 2.0, "y");
    sweep("c2 X", x);
    sweep("c2 Y", y);
    const FiniteLengthSpace point({"o"}, {0.0});
    const double xy = gh_bruteforce(x, y);
    if (std::abs(gh_bruteforce(x, x)) > kTau) ++bad;
    if (std::abs(gh_bruteforce(y, x) - xy) > kTau) ++bad;
    if (std::abs(gh_bruteforce(point, x) - x.diameter() / 2.0) > kTau) ++bad;
    Correspondence r;
    for (std::size_t i = 0; i < x.size(); ++i) r.pairs.emplace_back(i, rng() % y.size());
    for (std::size_t j = 0; j < y.size(); ++j) r.pairs.emplace_back(rng() % x.size(), j);
    if (gh_upper_bound(r, x, y) < xy - kTau) ++bad;
  }
  return {bad == 0, "50 pairs, " + std::to_string(bad) + " violations"};
}

CycleInMesh cycle_of(const SurfaceMesh& m, const std::vector<PointId>& ids) {
  CycleInMesh c;
  for (const auto& id : ids) c.vertices.push_back(m.index_of(id));
  return c;
}

struct Fixtures {
  SurfaceMesh genus2, torus, rp2;
  CycleInMesh separating, meridian, core;
};

Fixtures fixtures() {
  Fixtures f;
  f.torus = make_surface(SurfaceKind::Torus, 1);
  f.rp2 = make_surface(SurfaceKind::ProjectivePlane, 1);
  auto sum = connected_sum(f.torus, 0, f.torus, 0, 0.5);
  f.genus2 = sum.mesh;
  f.separating = cycle_of(f.genus2, sum.neck_cycle);
  f.meridian = cycle_of(f.torus, {"v0", "v1", "v2"});
  f.core = cycle_of(f.rp2, {"v1", "v2", "v3"});
  return f;
}

Outcome bookkeeping() {
  auto torus = make_surface(SurfaceKind::Torus, 1);
  auto sphere = make_surface(SurfaceKind::Sphere, 2);
  std::string detail;
  bool ok = true;
  auto expect = [&](const char* what, int got, int want) {
    detail += std::string(detail.empty() ? "" : ", ") + what + "=" + std::to_string(got);
    ok = ok && got == want;
  };
  auto tt = connected_sum(torus, 0, torus, 0, 0.5);
  auto handle = attach_handle(sphere, 0, sphere.index_of("v3"), 0.5);
  auto tiny = wedge_tiny_surface(sphere, 0, SurfaceKind::ProjectivePlane, 0.25);
  for (const auto* m : {&tt.mesh, &handle.mesh, &tiny.mesh}) sweep("c3 surgery", shortest_path_metric(m->edge_graph()));
  expect("c(T#T)", connectivity_number(tt.mesh), 4);
  expect("c(S+handle)", connectivity_number(handle.mesh), 2);
  expect("c(S#tinyP)", connectivity_number(tiny.mesh), 1);
  auto f = fixtures();
  int raised = 0;
  for (auto [mesh, cycle] : {std::pair{&f.genus2, &f.separating}, std::pair{&f.torus, &f.meridian},
                             std::pair{&f.rp2, &f.core}}) {
    auto collapse = collapse_cycle(*mesh, *cycle);
    sweep("c3 collapse", collapse.quotient.space);
    if (collapse.complex.euler() == euler_characteristic(*mesh) + 1) ++raised;
  }
  expect("chi+1 fixtures", raised, 3);
  return {ok, detail};
}

Outcome classification() {
  auto f = fixtures();
  std::string detail;
  bool ok = true;
  auto c1 = classify_cycle_quotient(f.genus2, f.separating);
  auto* w = std::get_if<WedgeCase>(&c1.kind);
  ok = ok && w && w->c1 == 2 && w->c2 == 2;
  detail += "genus2 case " + std::to_string(c1.case_number());
  auto c2 = classify_cycle_quotient(f.torus, f.meridian);
  auto* i = std::get_if<IdentificationCase>(&c2.kind);
  ok = ok && i && i->c == 0;
  detail += ", meridian case " + std::to_string(c2.case_number());
  auto c3 = classify_cycle_quotient(f.rp2, f.core);
  auto* s = std::get_if<SurfaceCase>(&c3.kind);
  ok = ok && s && s->c == 0 && !orientable(f.rp2);
  detail += ", core case " + std::to_string(c3.case_number());
  for (const auto* m : {&f.genus2, &f.torus, &f.rp2}) sweep("c4 fixture", shortest_path_metric(m->edge_graph()));
  return {ok, detail};
}

Outcome blocks() {
  std::mt19937_64 rng(5);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto raw = oracle::random_connected_graph(rng, 2, 15, 0.1, 2.0, 0.12);
    auto g = oracle::to_graph(raw);
    sweep("c5 graph", shortest_path_metric(g));
    const auto want = oracle::articulation_points(raw);
    if (cut_vertices(g) != std::vector<std::size_t>(want.begin(), want.end())) ++bad;
    auto tree = block_decomposition(g);
    std::vector<std::size_t> block_of(g.edge_count());
    for (std::size_t b = 0; b < tree.blocks.size(); ++b)
      for (auto e : tree.blocks[b].edges) block_of[e] = b;
    const auto& edges = g.edges();
    for (std::size_t a = 0; a < edges.size(); ++a)
      for (std::size_t b = a + 1; b < edges.size(); ++b) {
        const bool same = oracle::same_block(raw, {int(edges[a].u), int(edges[a].v)}, {int(edges[b].u), int(edges[b].v)});
        if (same != (block_of[a] == block_of[b])) {
          ++bad;
          a = edges.size();
          break;
        }
      }
  }
  return {bad == 0, "100 graphs, " + std::to_string(bad) + " disagreements"};
}

Outcome families() {
  bool ok = true;
  std::string detail;
  for (auto family : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5}) {
    FamilySpec spec;
    spec.family = family;
    spec.n_max = 8;
    spec.resolution = 2;
    spec.on_space = [](std::string_view label, const FiniteLengthSpace& s) { sweep(label, s); };
    const auto rows = run_family(spec);
    const auto checks = check_convergence(rows, kTau);
    ok = ok && checks.all();
    detail += std::string(detail.empty() ? "" : "; ") + std::string(to_string(family)) + " " +
              fmt(rows.front().gh_upper) + "->" + fmt(rows.back().gh_upper) + (checks.all() ? "" : " (check failed)");
  }
  return {ok, detail};
}

BaseSpace surface_base(const std::string& name, SurfaceKind kind) {
  auto m = make_surface(kind, 1);
  return {name, shortest_path_metric(m.edge_graph()), SurfaceSummand{connectivity_number(m), orientable(m)}};
}

Outcome budget() {
  bool ok = true;
  std::string detail;
  std::vector<SurfaceSummand> torus{{2, true}};
  ok = ok && verify_budget(torus, 1, 4).c0 == 2;
  try {
    verify_budget(torus, 1, 3);
    ok = false;
  } catch (const BudgetViolationError& e) {
    ok = ok && e.deficit() == 1;
  }
  detail = ok ? "accept (2,1,4), reject (2,1,3)" : "accept/reject wrong";

  struct Scenario {
    const char* name;
    GluingScript script;
    int ambient_c;
    bool orientable;
    bool non_orientable;
  };
  std::vector<Scenario> scenarios;
  {
    GluingScript s;  // torus v sphere
    s.bases = {surface_base("T", SurfaceKind::Torus), surface_base("S", SurfaceKind::Sphere)};
    s.steps.emplace_back(WedgeStep{0, "v0", 1, "v0"});
    scenarios.push_back({"all-orientable", s, 2, true, false});
  }
  {
    GluingScript s;  // torus v projective plane
    s.bases = {surface_base("T", SurfaceKind::Torus), surface_base("P", SurfaceKind::ProjectivePlane)};
    s.steps.emplace_back(WedgeStep{0, "v0", 1, "v0"});
    scenarios.push_back({"non-orientable block", s, 3, false, true});
  }
  {
    GluingScript s;  // sphere with two points glued
    s.bases = {surface_base("S", SurfaceKind::Sphere)};
    s.steps.emplace_back(IdentifyStep{0, "v0", "v3"});
    scenarios.push_back({"k>0", s, 2, true, true});
  }
  for (const auto& sc : scenarios) {
    auto result = run_gluing_script(sc.script);
    sweep("c7 script", result.space);
    auto record = verify_budget(result.provenance, sc.ambient_c);
    const bool match = record.orientable_suffices == sc.orientable && record.non_orientable_suffices == sc.non_orientable;
    ok = ok && match;
    detail += std::string(", ") + sc.name + (match ? " ok" : " mismatch");
  }
  return {ok, detail};
}

Outcome metric_sweep() {
  return {sweep.failed == 0 && sweep.seen > 0,
          std::to_string(sweep.seen) + " spaces, " + std::to_string(sweep.failed) + " failures" +
              (sweep.failed ? " (first: " + sweep.first_failure + ")" : "")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "quotient oracle equivalence", 5.0, quotient_oracle},
      {2, "gh oracle sanity", 30.0, gh_sanity},
      {3, "chi/c bookkeeping", 0.0, bookkeeping},
      {4, "classification fixtures", 5.0, classification},
      {5, "block decomposition oracle", 10.0, blocks},
      {6, "convergence families", 120.0, families},
      {7, "budget verifier", 0.0, budget},
      {8, "metric invariant sweep", 0.0, metric_sweep},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += ", over the " + fmt(c.budget_seconds) + " s budget";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.number, c.name, o.detail.c_str(), seconds);
  }
  return failures == 0 ? 0 : 1;
}
