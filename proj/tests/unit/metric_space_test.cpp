#include <gtest/gtest.h>

#include <random>

#include "ghl/error.hpp"
#include "ghl/metric_space.hpp"
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

MetricGraph path3() { return MetricGraph({"a", "b", "c"}, {{"a", "b", 1.0}, {"b", "c", 2.0}}); }

}  // namespace

TEST(MetricGraph, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { MetricGraph({"a", "a"}, std::vector<Edge>{}); }), ErrorKind::InvalidGraph);
  EXPECT_EQ(kind_of([] { MetricGraph({"a", "b"}, {{"a", "a", 1.0}}); }), ErrorKind::InvalidGraph);
  EXPECT_EQ(kind_of([] { MetricGraph({"a", "b"}, {{"a", "b", 0.0}}); }), ErrorKind::InvalidGraph);
  EXPECT_EQ(kind_of([] { MetricGraph({"a", "b"}, {{"a", "b", -1.0}}); }), ErrorKind::InvalidGraph);
  EXPECT_EQ(kind_of([] { MetricGraph({"a", "b"}, {{"a", "b", kInfinity}}); }), ErrorKind::InvalidGraph);
}

TEST(MetricGraph, ParallelEdgesKeepShortest) {
  MetricGraph g({"a", "b"}, {{"a", "b", 3.0}, {"b", "a", 1.5}});
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.edges()[0].length, 1.5);
}

TEST(ShortestPathMetric, Path) {
  auto x = shortest_path_metric(path3());
  EXPECT_DOUBLE_EQ(x(0, 2), 3.0);
  EXPECT_DOUBLE_EQ(x(2, 0), 3.0);
  EXPECT_DOUBLE_EQ(x.diameter(), 3.0);
}

TEST(ShortestPathMetric, Disconnected) {
  MetricGraph g({"a", "b", "c"}, {{"a", "b", 1.0}});
  EXPECT_EQ(kind_of([&] { shortest_path_metric(g); }), ErrorKind::DisconnectedGraph);
}

TEST(ShortestPathMetric, MatchesPathEnumeration) {
  std::mt19937_64 rng(0);
  for (int trial = 0; trial < 60; ++trial) {
    auto raw = oracle::random_connected_graph(rng, 2, 7, 0.1, 2.0, 0.4);
    auto x = shortest_path_metric(oracle::to_graph(raw));
    auto want = oracle::apsp_by_enumeration(raw);
    for (int i = 0; i < raw.n; ++i)
      for (int j = 0; j < raw.n; ++j) ASSERT_NEAR(x(i, j), want[i][j], 1e-12) << "trial " << trial;
    EXPECT_TRUE(check_metric_axioms(x));
    EXPECT_TRUE(oracle::metric_ok(x));
  }
}

TEST(FiniteLengthSpace, Validation) {
  EXPECT_EQ(kind_of([] { FiniteLengthSpace({}, {}); }), ErrorKind::InvalidSpace);
  EXPECT_EQ(kind_of([] { FiniteLengthSpace({"a", "b"}, {0, 1, 2, 0}); }), ErrorKind::InvalidSpace);
  EXPECT_EQ(kind_of([] { FiniteLengthSpace({"a", "b"}, {0, 0, 0, 0}); }), ErrorKind::InvalidSpace);
  EXPECT_EQ(kind_of([] { FiniteLengthSpace({"a", "b"}, {1, 1, 1, 0}); }), ErrorKind::InvalidSpace);
  EXPECT_EQ(kind_of([] { FiniteLengthSpace({"a", "a"}, {0, 1, 1, 0}); }), ErrorKind::InvalidSpace);
  EXPECT_EQ(kind_of([] { FiniteLengthSpace({"a"}, {0, 0}); }), ErrorKind::InvalidSpace);
}

TEST(CheckMetricAxioms, CatchesTriangleFailure) {
  FiniteLengthSpace bad({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0});
  auto check = check_metric_axioms(bad);
  EXPECT_FALSE(check);
  EXPECT_FALSE(check.failure.empty());
  EXPECT_FALSE(oracle::metric_ok(bad));
}

TEST(Restrict, KeepsOrderAndDistances) {
  auto x = shortest_path_metric(path3());
  std::vector<std::size_t> sub{2, 0};
  auto y = restrict(x, sub);
  EXPECT_EQ(y.id(0), "c");
  EXPECT_DOUBLE_EQ(y(0, 1), 3.0);
  std::vector<std::size_t> none;
  EXPECT_EQ(kind_of([&] { restrict(x, none); }), ErrorKind::EmptySubset);
  EXPECT_EQ(kind_of([&] { x.index_of("zz"); }), ErrorKind::PointNotInSpace);
}

TEST(SkeletonGraph, ReproducesSpace) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = oracle::random_space(rng, 6);
    auto back = shortest_path_metric(skeleton_graph(x));
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) EXPECT_NEAR(back(i, j), x(i, j), 1e-9);
  }
}

TEST(FreshId, AppendsPrimes) {
  EXPECT_EQ(fresh_id("a", {"b"}), "a");
  EXPECT_EQ(fresh_id("a", {"a", "a'"}), "a''");
}
