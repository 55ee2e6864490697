#include <gtest/gtest.h>

#include <random>

#include "ghl/constructions.hpp"
#include "ghl/error.hpp"
#include "ghl/gluing_script.hpp"
#include "oracles.hpp"

using namespace ghl;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ghl::Error thrown";
  return ErrorKind::IoError;
}

FiniteLengthSpace line(int n, const std::string& prefix) {
  std::vector<PointId> ids;
  std::vector<double> d;
  for (int i = 0; i < n; ++i) {
    ids.push_back(prefix + std::to_string(i));
    for (int j = 0; j < n; ++j) d.push_back(std::abs(i - j));
  }
  return FiniteLengthSpace(ids, d);
}

}  // namespace

TEST(TwoPointIdentification, AgreesWithBothOracles) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto raw = oracle::random_connected_graph(rng, 3, 10, 0.1, 2.0);
    auto x = shortest_path_metric(oracle::to_graph(raw));
    const int p = static_cast<int>(rng() % raw.n);
    int q = static_cast<int>(rng() % (raw.n - 1));
    if (q >= p) ++q;
    auto glued = two_point_identification(x, p, q);
    ASSERT_EQ(glued.space.size(), x.size() - 1);
    EXPECT_EQ(glued.projection[p], glued.projection[q]);
    const auto d = oracle::as_matrix(x);
    const auto zero_edge = oracle::identification_by_zero_edge(oracle::apsp_by_enumeration(raw), p, q);
    auto row_of = [&](int v) { return v < q ? v : v - 1; };
    for (int a = 0; a < raw.n; ++a)
      for (int b = 0; b < raw.n; ++b) {
        if (a == q || b == q) continue;
        const double got = glued.space(glued.projection[a], glued.projection[b]);
        EXPECT_NEAR(got, oracle::three_term(d, a, b, p, q), 1e-9);
        EXPECT_NEAR(got, zero_edge[row_of(a)][row_of(b)], 1e-9);
      }
    EXPECT_TRUE(oracle::metric_ok(glued.space));
  }
}

TEST(TwoPointIdentification, NamesAndErrors) {
  auto x = line(4, "v");
  auto glued = two_point_identification(x, 3, 0);
  EXPECT_EQ(glued.space.id(glued.projection[3]), "v0");
  EXPECT_DOUBLE_EQ(glued.space(glued.projection[1], glued.projection[3]), 1.0);
  EXPECT_EQ(kind_of([&] { two_point_identification(x, 1, 1); }), ErrorKind::SamePoint);
  EXPECT_EQ(kind_of([&] { two_point_identification(x, 1, 9); }), ErrorKind::PointNotInSpace);
}

TEST(WedgeSum, CrossDistances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = oracle::random_space(rng, 2 + static_cast<int>(rng() % 5), 0.1, 2.0, "p");
    auto y = oracle::random_space(rng, 2 + static_cast<int>(rng() % 5), 0.1, 2.0, "p");
    const std::size_t p = rng() % x.size();
    const std::size_t q = rng() % y.size();
    auto w = wedge_sum(x, p, y, q);
    ASSERT_EQ(w.space.size(), x.size() + y.size() - 1);
    EXPECT_EQ(w.left[p], w.wedge_point);
    EXPECT_EQ(w.right[q], w.wedge_point);
    const auto dx = oracle::as_matrix(x);
    const auto dy = oracle::as_matrix(y);
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) EXPECT_NEAR(w.space(w.left[a], w.left[b]), x(a, b), 1e-12);
      for (std::size_t b = 0; b < y.size(); ++b) {
        EXPECT_NEAR(w.space(w.left[a], w.right[b]), oracle::wedge_cross(dx, dy, a, p, q, b), 1e-12);
      }
    }
    for (std::size_t a = 0; a < y.size(); ++a)
      for (std::size_t b = 0; b < y.size(); ++b) EXPECT_NEAR(w.space(w.right[a], w.right[b]), y(a, b), 1e-12);
    EXPECT_TRUE(oracle::metric_ok(w.space));
  }
}

TEST(WedgeSum, RenamesClashes) {
  auto w = wedge_sum(line(2, "v"), 0, line(3, "v"), 2);
  EXPECT_EQ(w.space.id(w.right[0]), "v0'");
  EXPECT_EQ(w.space.id(w.right[1]), "v1'");
  EXPECT_EQ(w.space.id(w.wedge_point), "v0");
  EXPECT_EQ(disjoint_ids({"a", "b"}, {"b", "c"}), (std::vector<PointId>{"b'", "c"}));
}

TEST(CollapseSubset, ClosedForm) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = oracle::random_space(rng, 3 + static_cast<int>(rng() % 5));
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (rng() % 2) subset.push_back(i);
    if (subset.empty() || subset.size() == x.size()) continue;
    auto c = collapse_subset(x, subset);
    std::vector<double> to_set(x.size(), oracle::kInf);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (auto s : subset) to_set[i] = std::min(to_set[i], x(i, s));
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < x.size(); ++b) {
        const double want = std::min(x(a, b), to_set[a] + to_set[b]);
        EXPECT_NEAR(c.space(c.projection[a], c.projection[b]), want, 1e-9);
      }
    EXPECT_TRUE(oracle::metric_ok(c.space));
  }
  auto x = line(3, "v");
  std::vector<std::size_t> none, all{0, 1, 2};
  EXPECT_EQ(kind_of([&] { collapse_subset(x, none); }), ErrorKind::EmptySubset);
  EXPECT_EQ(kind_of([&] { collapse_subset(x, all); }), ErrorKind::FullSubset);
}

TEST(CollapseComponents, WhiskersShorterThanDelta) {
  // Triangle core a-b-c with whiskers of length 0.2 (at a) and 1.0 (at b).
  MetricGraph g({"a", "b", "c", "s1", "s2", "l1", "l2"},
                {{"a", "b", 1.0}, {"b", "c", 1.0}, {"c", "a", 1.0}, {"a", "s1", 0.1}, {"s1", "s2", 0.1},
                 {"b", "l1", 0.5}, {"l1", "l2", 0.5}});
  std::vector<std::size_t> keep{0, 1, 2};
  auto cc = collapse_components(g, keep, 0.5);
  ASSERT_EQ(cc.components.size(), 1u);
  EXPECT_EQ(cc.attachments[0], 0u);
  EXPECT_EQ(cc.quotient.space.size(), 5u);
  auto x = shortest_path_metric(g);
  EXPECT_NEAR(gh_upper_bound(cc.correspondence, x, cc.quotient.space), 0.1, 1e-12);
  EXPECT_LE(gh_upper_bound(cc.correspondence, x, cc.quotient.space), 0.5);
  EXPECT_EQ(collapse_components(g, keep, 2.0).quotient.space.size(), 3u);
  EXPECT_EQ(collapse_components(g, keep, 0.1).quotient.space.size(), 7u);

  // Same answer through the space overload.
  auto via_space = collapse_components(x, keep, 0.5);
  EXPECT_EQ(via_space.quotient.space.size(), 5u);
}

TEST(CollapseComponents, BadBoundary) {
  // Path a - m - b with keep {a, b}: the component {m} touches two kept points.
  MetricGraph g({"a", "m", "b"}, {{"a", "m", 0.1}, {"m", "b", 0.1}});
  std::vector<std::size_t> keep{0, 2};
  EXPECT_EQ(kind_of([&] { collapse_components(g, keep, 1.0); }), ErrorKind::BadBoundary);
}

TEST(GluingScript, WedgeIdentifyCollapse) {
  GluingScript script;
  script.bases.push_back({"left", line(3, "a"), SurfaceSummand{2, true}});
  script.bases.push_back({"right", line(3, "b"), std::nullopt});
  script.steps.emplace_back(WedgeStep{0, "a2", 1, "b0"});
  script.steps.emplace_back(IdentifyStep{0, "a0", "b2"});
  script.steps.emplace_back(CollapseStep{0, {"a1", "b1"}});
  auto result = run_gluing_script(script);
  EXPECT_EQ(result.space.size(), 3u);
  EXPECT_EQ(result.provenance.identifications, 1);
  EXPECT_EQ(result.provenance.collapses, 1);
  ASSERT_EQ(result.provenance.wedges.size(), 1u);
  ASSERT_EQ(result.provenance.surfaces.size(), 1u);
  EXPECT_EQ(result.provenance.surface_names[0], "left");
  EXPECT_TRUE(oracle::metric_ok(result.space));
}

TEST(GluingScript, ErrorsCarryStep) {
  GluingScript script;
  script.bases.push_back({"x", line(3, "a"), std::nullopt});
  script.steps.emplace_back(IdentifyStep{0, "a0", "a0"});
  try {
    run_gluing_script(script);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SamePoint);
    EXPECT_NE(std::string(e.what()).find("step 0"), std::string::npos);
  }
  GluingScript two;
  two.bases.push_back({"x", line(2, "a"), std::nullopt});
  two.bases.push_back({"y", line(2, "b"), std::nullopt});
  EXPECT_EQ(kind_of([&] { run_gluing_script(two); }), ErrorKind::ScriptError);
}
