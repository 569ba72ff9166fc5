#include <gtest/gtest.h>

#include <cmath>

#include "recsub/matching.hpp"
#include "support/oracles.hpp"

using namespace recsub;

namespace {

BipartiteGraph make(std::size_t l, std::size_t r, std::vector<Edge> edges) {
  return build_graph(l, r, edges);
}

}  // namespace

TEST(HopcroftKarp, IdentityGraph) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) edges.push_back({i, i});
  const auto g = make(5, 5, edges);
  const auto m = hopcroft_karp(g);
  EXPECT_EQ(m.size, 5u);
  EXPECT_TRUE(m.is_valid_for(g));
}

TEST(HopcroftKarp, ThreeEdgeInstance) {
  const auto g = make(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  EXPECT_EQ(ref::brute_force_max_matching(g), 2u);
  EXPECT_EQ(hopcroft_karp(g).size, 2u);
}

TEST(HopcroftKarp, EmptyGraph) {
  EXPECT_EQ(hopcroft_karp(make(3, 4, {})).size, 0u);
  EXPECT_EQ(hopcroft_karp(BipartiteGraph{}).size, 0u);
}

TEST(HopcroftKarp, ParallelEdgesIgnored) {
  const auto g = make(2, 2, {{0, 0}, {0, 0}, {1, 0}, {1, 1}, {1, 1}});
  const auto m = hopcroft_karp(g);
  EXPECT_EQ(m.size, 2u);
  EXPECT_TRUE(m.is_valid_for(g));
}

TEST(HopcroftKarp, MatchesBruteForceAndPhaseBound) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t l = 1 + rng.below(7), r = 1 + rng.below(7);
    const auto g = ref::random_simple_graph(l, r, 0.1 + 0.5 * rng.uniform(), rng);
    MatchingStats stats;
    const auto m = hopcroft_karp(g, &stats);
    ASSERT_TRUE(m.is_valid_for(g));
    EXPECT_EQ(m.size, ref::brute_force_max_matching(g));
    EXPECT_LE(static_cast<double>(stats.phases), 2 * std::sqrt(static_cast<double>(l + r)) + 2);
    EXPECT_EQ(ref::shortest_augmenting_path(g, m), std::numeric_limits<std::size_t>::max());
  }
}

TEST(HopcroftKarp, PhaseBoundOnLargerGraphs) {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 200 + rng.below(200);
    const auto g = ref::random_simple_graph(n, n, 3.0 / n, rng);
    MatchingStats stats;
    hopcroft_karp(g, &stats);
    EXPECT_LE(static_cast<double>(stats.phases), 2 * std::sqrt(2.0 * n) + 2);
  }
}

TEST(BoundedMatching, CutoffOneIsMaximal) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = ref::random_simple_graph(1 + rng.below(8), 1 + rng.below(8), 0.4, rng);
    const auto m = bounded_matching(g, 1);
    ASSERT_TRUE(m.is_valid_for(g));
    for (const auto& e : g.edges())
      EXPECT_FALSE(m.match_left[e.u] == kUnmatched && m.match_right[e.v] == kUnmatched);
  }
}

TEST(BoundedMatching, SingleAugmentationFromInitialMatching) {
  // u0-v0, u1-v0, u1-v1 with M = {(u1, v0)}: the path u0 v0 u1 v1 has 3 edges.
  const auto g = make(2, 2, {{0, 0}, {1, 0}, {1, 1}});
  Matching initial(2, 2);
  initial.add(1, 0);
  EXPECT_EQ(bounded_matching(g, 1, initial).size, 1u);
  const auto m = bounded_matching(g, 3, initial);
  EXPECT_EQ(m.size, 2u);
  EXPECT_TRUE(m.is_valid_for(g));
}

TEST(BoundedMatching, RejectsEvenCutoffAndBadInitial) {
  const auto g = make(1, 1, {{0, 0}});
  EXPECT_THROW(bounded_matching(g, 2), ConfigError);
  EXPECT_THROW(bounded_matching(g, 3, Matching(2, 1)), ValidationError);
}

TEST(BoundedMatching, NoShortAugmentingPathAndApproximationGuarantee) {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + rng.below(60);
    const auto g = ref::random_simple_graph(n, n, 2.5 / n, rng);
    const auto best = hopcroft_karp(g).size;
    std::size_t prev = 0;
    for (std::size_t cutoff = 1; cutoff <= 15; cutoff += 2) {
      const auto m = bounded_matching(g, cutoff);
      ASSERT_TRUE(m.is_valid_for(g));
      const auto shortest = ref::shortest_augmenting_path(g, m);
      EXPECT_GT(shortest, cutoff);
      const double t = static_cast<double>(cutoff + 1) / 2;
      EXPECT_GE(static_cast<double>(m.size), (1.0 - 1.0 / t) * static_cast<double>(best) - 1e-9);
      EXPECT_GE(m.size, prev);  // non-decreasing in the cutoff
      prev = m.size;
    }
  }
}

TEST(BoundedMatching, UnboundedCutoffEqualsHopcroftKarp) {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t l = 1 + rng.below(7), r = 1 + rng.below(7);
    const auto g = ref::random_simple_graph(l, r, 0.35, rng);
    const auto best = hopcroft_karp(g).size;
    EXPECT_EQ(bounded_matching(g, 2 * std::max<std::size_t>(best, 1) - 1).size, best);
  }
}
