#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "recsub/error.hpp"
#include "recsub/graph.hpp"
#include "recsub/rng.hpp"

namespace recsub {

/// Fixed-degree model: every left vertex draws `d` right neighbors uniformly,
/// independently, with replacement.
struct FixedDegreeSpec {
  std::size_t l = 0;
  std::size_t r = 1;
  std::size_t d = 1;
  std::uint64_t seed = 0;

  void check() const {
    if (d < 1) throw ConfigError("fixed-degree model requires d >= 1");
    if (r < 1) throw ConfigError("fixed-degree model requires r >= 1");
  }
};

/// Bipartite Erdos-Renyi model G_{l,r,p}.
struct ErdosRenyiSpec {
  std::size_t l = 0;
  std::size_t r = 0;
  double p = 0.0;
  std::uint64_t seed = 0;

  void check() const {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("edge probability must lie in [0, 1]");
  }
};

/// gamma such that p = gamma * log(l) / l.
inline double gamma_of(double p, std::size_t l) {
  if (l < 2) return 0.0;
  const double ll = static_cast<double>(l);
  return p * ll / std::log(ll);
}

/// Duplicates are kept: a left vertex may list the same right vertex twice.
inline BipartiteGraph gen_fixed_degree(const FixedDegreeSpec& spec) {
  spec.check();
  SplitMix64 rng(derive_seed(spec.seed, 0));
  std::vector<Edge> edges;
  edges.reserve(spec.l * spec.d);
  for (std::size_t u = 0; u < spec.l; ++u)
    for (std::size_t i = 0; i < spec.d; ++i)
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(rng.below(spec.r))});
  return BipartiteGraph::from_edges(spec.l, spec.r, edges);
}

/// Each of the l*r pairs is present independently with probability p.
/// Walks the row-major pair index with geometric skips, so the cost is O(m)
/// rather than O(l*r).
inline BipartiteGraph gen_erdos_renyi(const ErdosRenyiSpec& spec) {
  spec.check();
  const std::uint64_t total = static_cast<std::uint64_t>(spec.l) * spec.r;
  std::vector<Edge> edges;
  if (total == 0 || spec.p == 0.0) return BipartiteGraph::from_edges(spec.l, spec.r, edges);

  if (spec.p == 1.0) {
    edges.reserve(total);
    for (std::size_t u = 0; u < spec.l; ++u)
      for (std::size_t v = 0; v < spec.r; ++v) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    return BipartiteGraph::from_edges(spec.l, spec.r, edges);
  }

  SplitMix64 rng(derive_seed(spec.seed, 1));
  edges.reserve(static_cast<std::size_t>(static_cast<double>(total) * spec.p * 1.1) + 16);
  const double log_q = std::log1p(-spec.p);
  // Index of the next present pair: current + 1 + Geometric(p) failures.
  std::uint64_t idx = 0;
  bool first = true;
  for (;;) {
    const double skip = std::floor(std::log(rng.uniform_open_zero()) / log_q);
    const double limit = static_cast<double>(total);
    if (skip >= limit) break;
    const auto step = static_cast<std::uint64_t>(skip);
    const std::uint64_t next = first ? step : idx + 1 + step;
    if (next >= total || next < idx) break;
    idx = next;
    first = false;
    edges.push_back({static_cast<Vertex>(idx / spec.r), static_cast<Vertex>(idx % spec.r)});
  }
  return BipartiteGraph::from_edges(spec.l, spec.r, edges);
}

}  // namespace recsub
