#include <gtest/gtest.h>

#include <cmath>

#include "recsub/generators.hpp"
#include "recsub/rng.hpp"

using namespace recsub;

TEST(Rng, BelowIsInRangeAndRoughlyUniform) {
  SplitMix64 rng(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(Rng, SplitStreamsDiffer) {
  SplitMix64 a(1);
  EXPECT_NE(a.split(0)(), a.split(1)());
  EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
  EXPECT_NE(derive_seed(9, 3), derive_seed(9, 4));
}

TEST(FixedDegree, SingleTarget) {
  const auto g = gen_fixed_degree({3, 1, 2, 99});
  for (Vertex u = 0; u < 3; ++u) {
    ASSERT_EQ(g.left_degree(u), 2u);
    for (Vertex v : g.left_neighbors(u)) EXPECT_EQ(v, 0u);
  }
  EXPECT_FALSE(g.is_simple());
}

TEST(FixedDegree, EdgeCountAndPerVertexDegree) {
  for (std::uint64_t seed : {1u, 7u, 123u}) {
    const auto g = gen_fixed_degree({1000, 4000, 20, seed});
    EXPECT_EQ(g.edge_count(), 20000u);
    for (Vertex u = 0; u < 1000; ++u) ASSERT_EQ(g.left_degree(u), 20u);
  }
}

TEST(FixedDegree, CoveredFractionMatchesPoissonLimit) {
  // 1 - e^{-dk} with d=20, k=1/4; averaged over 100 seeds.
  const double expected = 1.0 - std::exp(-5.0);
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_fixed_degree({1000, 4000, 20, seed});
    std::size_t hit = 0;
    for (Vertex v = 0; v < 4000; ++v) hit += g.right_degree(v) > 0;
    sum += hit / 4000.0;
  }
  EXPECT_NEAR(sum / 100, expected, 0.02);
}

TEST(FixedDegree, Deterministic) {
  EXPECT_EQ(gen_fixed_degree({50, 80, 5, 42}).edges(), gen_fixed_degree({50, 80, 5, 42}).edges());
  EXPECT_NE(gen_fixed_degree({50, 80, 5, 42}).edges(), gen_fixed_degree({50, 80, 5, 43}).edges());
}

TEST(FixedDegree, RejectsBadSpec) {
  EXPECT_THROW(gen_fixed_degree({3, 0, 2, 0}), ConfigError);
  EXPECT_THROW(gen_fixed_degree({3, 3, 0, 0}), ConfigError);
}

TEST(ErdosRenyi, Extremes) {
  EXPECT_EQ(gen_erdos_renyi({10, 12, 0.0, 1}).edge_count(), 0u);
  const auto full = gen_erdos_renyi({10, 12, 1.0, 1});
  EXPECT_EQ(full.edge_count(), 120u);
  EXPECT_TRUE(full.is_simple());
  EXPECT_THROW(gen_erdos_renyi({1, 1, 1.5, 1}), ConfigError);
}

TEST(ErdosRenyi, EdgeCountWithinThreeSigma) {
  const auto g = gen_erdos_renyi({500, 1000, 0.02, 11});
  const double sigma = std::sqrt(500.0 * 1000 * 0.02 * 0.98);  // ~99
  EXPECT_NEAR(static_cast<double>(g.edge_count()), 10000.0, 3 * sigma);
  EXPECT_TRUE(g.is_simple());
}

TEST(ErdosRenyi, MeanEdgeCountOverSeeds) {
  const double n = 100.0 * 150, p = 0.05;
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) sum += gen_erdos_renyi({100, 150, p, seed}).edge_count();
  const double mean_sigma = std::sqrt(n * p * (1 - p) / 200);
  EXPECT_NEAR(sum / 200, n * p, 4 * mean_sigma);
}

TEST(ErdosRenyi, PairsUniformAcrossIndexSpace) {
  // Every pair should appear with frequency ~p; check corners and the middle.
  std::vector<int> hits(6 * 7, 0);
  const int trials = 4000;
  for (int s = 0; s < trials; ++s)
    for (const auto& e : gen_erdos_renyi({6, 7, 0.3, static_cast<std::uint64_t>(s)}).edges()) ++hits[e.u * 7 + e.v];
  const double sigma = std::sqrt(trials * 0.3 * 0.7);
  for (int h : hits) EXPECT_NEAR(h, trials * 0.3, 5 * sigma);
}

TEST(ErdosRenyi, DegreeMatchesFixedDegreeAtPEqualsDOverR) {
  // p = d / r gives mean left degree d.
  const std::size_t l = 400, r = 2000, d = 20;
  const auto g = gen_erdos_renyi({l, r, static_cast<double>(d) / r, 5});
  const double mean = static_cast<double>(g.edge_count()) / l;
  EXPECT_NEAR(mean, 20.0, 4 * std::sqrt(20.0 / l));
}

TEST(ErdosRenyi, Deterministic) {
  EXPECT_EQ(gen_erdos_renyi({80, 90, 0.1, 3}).edges(), gen_erdos_renyi({80, 90, 0.1, 3}).edges());
}

TEST(Gamma, Definition) {
  EXPECT_NEAR(gamma_of(2 * std::log(1000.0) / 1000, 1000), 2.0, 1e-12);
}
