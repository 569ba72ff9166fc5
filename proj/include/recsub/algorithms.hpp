#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recsub/bounds.hpp"
#include "recsub/error.hpp"
#include "recsub/graph.hpp"
#include "recsub/matching.hpp"
#include "recsub/rng.hpp"

namespace recsub {

enum class Algorithm { Sampling, Greedy, Partition };

inline std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Sampling: return "sampling";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Partition: return "partition";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) noexcept {
  if (s == "sampling") return Algorithm::Sampling;
  if (s == "greedy") return Algorithm::Greedy;
  if (s == "partition") return Algorithm::Partition;
  return std::nullopt;
}

/// Order in which greedy visits right vertices.
enum class GreedyOrder { Input, RandomPermutation };

/// Which a candidates greedy keeps when more than a are available.
enum class GreedyTiebreak {
  MostRemainingCapacity,  // smallest current out-degree first, ties by index
  Input,                  // first a in adjacency (index) order
};

struct SolverConfig {
  ProblemParams params;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  GreedyOrder greedy_order = GreedyOrder::Input;
  GreedyTiebreak greedy_tiebreak = GreedyTiebreak::MostRemainingCapacity;

  void check() const {
    params.check();
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  }
};

/// Instrumentation for the complexity checks. `aux_state` counts words of
/// working state beyond the input graph and the output subgraph.
struct SolveStats {
  std::size_t edges_touched = 0;
  std::size_t aux_state = 0;
  std::size_t scratch = 0;  // transient per-step buffers (greedy candidate list)
  std::size_t peak_edges_held = 0;
};

/// Keep a uniform c-subset of each left vertex's candidate list.
///
/// Selection sampling over adjacency positions: one pass, three words of
/// state, stops as soon as c positions are taken. On multigraphs a repeated
/// neighbor drawn twice yields one edge (the duplicate slot is wasted).
inline RecSubgraph solve_sampling(const BipartiteGraph& g, const SolverConfig& config,
                                  SolveStats* stats = nullptr) {
  config.check();
  const std::size_t c = config.params.c;
  SplitMix64 rng(derive_seed(config.seed, 0x5a));
  RecSubgraph h(g.left_size(), g.right_size());
  std::size_t touched = 0;
  for (std::size_t ui = 0; ui < g.left_size(); ++ui) {
    const auto u = static_cast<Vertex>(ui);
    const auto nb = g.left_neighbors(u);
    std::size_t need = std::min(c, nb.size());
    Vertex last = kUnmatched;
    for (std::size_t i = 0; i < nb.size() && need > 0; ++i) {
      ++touched;
      if (rng.below(nb.size() - i) < need) {
        --need;
        if (nb[i] != last) h.add(u, nb[i]);
        last = nb[i];
      }
    }
  }
  if (stats) {
    stats->edges_touched += touched;
    stats->aux_state = std::max<std::size_t>(stats->aux_state, 3);
    stats->peak_edges_held = std::max<std::size_t>(stats->peak_edges_held, 1);
  }
  return h;
}

/// One pass over R: a right vertex is covered iff at least a of its
/// neighbors still have spare budget, in which case exactly a edges are
/// added. Every right vertex ends with in-degree 0 or a.
inline RecSubgraph solve_greedy(const BipartiteGraph& g, const SolverConfig& config,
                                SolveStats* stats = nullptr) {
  config.check();
  const std::size_t c = config.params.c;
  const std::size_t a = config.params.a;
  RecSubgraph h(g.left_size(), g.right_size());
  std::vector<std::uint32_t> used(g.left_size(), 0);

  std::vector<Vertex> order;
  if (config.greedy_order == GreedyOrder::RandomPermutation) {
    order.resize(g.right_size());
    std::iota(order.begin(), order.end(), Vertex{0});
    SplitMix64 rng(derive_seed(config.seed, 0x6b));
    shuffle(order.begin(), order.end(), rng);
  }

  std::vector<Vertex> candidates;
  std::size_t touched = 0;
  std::size_t scratch = 0;
  for (std::size_t i = 0; i < g.right_size(); ++i) {
    const Vertex v = order.empty() ? static_cast<Vertex>(i) : order[i];
    candidates.clear();
    Vertex last = kUnmatched;
    for (Vertex u : g.right_neighbors(v)) {
      ++touched;
      if (u != last && used[u] < c) candidates.push_back(u);
      last = u;
    }
    scratch = std::max(scratch, candidates.size());
    if (candidates.size() < a) continue;
    if (config.greedy_tiebreak == GreedyTiebreak::MostRemainingCapacity) {
      std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(a), candidates.end(),
                        [&](Vertex x, Vertex y) { return used[x] != used[y] ? used[x] < used[y] : x < y; });
    }
    for (std::size_t j = 0; j < a; ++j) {
      h.add(candidates[j], v);
      ++used[candidates[j]];
    }
  }
  if (stats) {
    stats->edges_touched += touched;
    stats->aux_state = std::max(stats->aux_state, used.size() + order.size());
    stats->scratch = std::max(stats->scratch, scratch);
    stats->peak_edges_held = std::max(stats->peak_edges_held, scratch);
  }
  return h;
}

/// Layout of the overlapping right-side windows used by the partition solver.
///
/// A random sample R' of min(r, floor(lc/a)) right vertices is enumerated as
/// positions 0..n-1. Window i (0 <= i < c) covers positions
/// (floor(i*l/a) + j) mod n for 0 <= j < width, with width = min(l, n).
/// When a divides l the starts are multiples of l/a; when l/a and lc/a are
/// integral every sampled vertex lies in exactly a windows, otherwise in a-1,
/// a or a+1.
struct WindowLayout {
  std::vector<Vertex> sample;  // position -> right vertex
  std::size_t width = 0;
  std::size_t count = 0;
  std::size_t left = 0;  // l
  std::size_t a = 1;

  std::size_t size() const noexcept { return sample.size(); }

  std::size_t start(std::size_t window) const noexcept { return window * left / a % sample.size(); }

  /// Position of local slot j in window i.
  std::size_t position(std::size_t window, std::size_t j) const noexcept {
    return (start(window) + j) % sample.size();
  }
};

inline WindowLayout make_window_layout(std::size_t l, std::size_t r, const ProblemParams& params,
                                       SplitMix64& rng) {
  WindowLayout w;
  const std::size_t n = std::min(r, l * params.c / params.a);
  w.count = params.c;
  if (n == 0) return w;
  // Partial Fisher-Yates: the first n entries form a uniform ordered sample.
  std::vector<Vertex> all(r);
  std::iota(all.begin(), all.end(), Vertex{0});
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + rng.below(r - i);
    std::swap(all[i], all[j]);
  }
  all.resize(n);
  w.sample = std::move(all);
  w.width = std::min(l, n);
  w.left = l;
  w.a = params.a;
  return w;
}

/// Union of c near-perfect matchings between L and overlapping windows of a
/// right-side sample. Each candidate edge into the sample is handed to one of
/// the windows containing its right endpoint, uniformly at random; each
/// window is matched until no augmenting path of at most 2*ceil(c/eps)-1
/// edges remains. Requires a <= c.
inline RecSubgraph solve_partition(const BipartiteGraph& g, const SolverConfig& config,
                                   SolveStats* stats = nullptr) {
  config.check();
  const std::size_t c = config.params.c;
  const std::size_t a = config.params.a;
  if (a > c) throw ConfigError("partition requires a <= c (got a=" + std::to_string(a) + ", c=" + std::to_string(c) + ")");

  RecSubgraph h(g.left_size(), g.right_size());
  SplitMix64 rng(derive_seed(config.seed, 0x7c));
  const WindowLayout layout = make_window_layout(g.left_size(), g.right_size(), config.params, rng);
  if (layout.size() == 0 || g.edge_count() == 0) return h;
  const std::size_t n = layout.size();

  // position -> windows containing it, in offset-array form
  std::vector<std::size_t> member_offsets(n + 1, 0);
  for (std::size_t i = 0; i < layout.count; ++i)
    for (std::size_t j = 0; j < layout.width; ++j) ++member_offsets[layout.position(i, j) + 1];
  for (std::size_t q = 0; q < n; ++q) member_offsets[q + 1] += member_offsets[q];
  std::vector<std::uint32_t> members(member_offsets[n]);
  {
    auto cursor = member_offsets;
    for (std::size_t i = 0; i < layout.count; ++i)
      for (std::size_t j = 0; j < layout.width; ++j)
        members[cursor[layout.position(i, j)]++] = static_cast<std::uint32_t>(i);
  }
  std::vector<std::uint32_t> position_of(g.right_size(), kUnmatched);
  for (std::size_t q = 0; q < n; ++q) position_of[layout.sample[q]] = static_cast<std::uint32_t>(q);

  // Distinct edges only: a parallel edge routed to a second window could
  // otherwise select the same (u, v) pair twice.
  std::vector<std::vector<Edge>> window_edges(layout.count);
  std::size_t assigned = 0;
  std::size_t touched = 0;
  for (std::size_t ui = 0; ui < g.left_size(); ++ui) {
    const auto u = static_cast<Vertex>(ui);
    Vertex last = kUnmatched;
    for (Vertex v : g.left_neighbors(u)) {
      ++touched;
      if (v == last) continue;
      last = v;
      const std::uint32_t q = position_of[v];
      if (q == kUnmatched) continue;
      const std::size_t lo = member_offsets[q];
      const std::size_t hi = member_offsets[q + 1];
      if (lo == hi) continue;
      const std::uint32_t win = members[lo + rng.below(hi - lo)];
      const std::size_t start = layout.start(win);
      const std::size_t local = (q + n - start) % n;
      window_edges[win].push_back({u, static_cast<Vertex>(local)});
      ++assigned;
    }
  }

  const auto rounds = static_cast<std::size_t>(std::ceil(static_cast<double>(c) / config.epsilon));
  const std::size_t cutoff = 2 * rounds - 1;
  std::size_t largest_window = 0;
  for (std::size_t i = 0; i < layout.count; ++i) {
    const BipartiteGraph sub = BipartiteGraph::from_edges(g.left_size(), layout.width, window_edges[i]);
    largest_window = std::max(largest_window, sub.edge_count());
    std::vector<Edge>().swap(window_edges[i]);
    MatchingStats ms;
    const Matching m = bounded_matching(sub, cutoff, &ms);
    touched += ms.edges_scanned;
    for (std::size_t u = 0; u < m.match_left.size(); ++u)
      if (m.match_left[u] != kUnmatched)
        h.add(static_cast<Vertex>(u), layout.sample[layout.position(i, m.match_left[u])]);
  }

  if (stats) {
    stats->edges_touched += touched;
    stats->aux_state = std::max(stats->aux_state, g.right_size() + n + members.size() + 2 * g.left_size());
    stats->peak_edges_held = std::max(stats->peak_edges_held, assigned + largest_window);
  }
  return h;
}

struct SolveResult {
  RecSubgraph subgraph;
  CoverageReport report;
  SolveStats stats;
};

/// Dispatch, time the solver call, validate its output, and score it against
/// the upper-bound estimate.
inline SolveResult solve(const BipartiteGraph& g, Algorithm algo, const SolverConfig& config) {
  config.check();
  SolveResult out;
  const auto start = std::chrono::steady_clock::now();
  switch (algo) {
    case Algorithm::Sampling: out.subgraph = solve_sampling(g, config, &out.stats); break;
    case Algorithm::Greedy: out.subgraph = solve_greedy(g, config, &out.stats); break;
    case Algorithm::Partition: out.subgraph = solve_partition(g, config, &out.stats); break;
  }
  const auto stop = std::chrono::steady_clock::now();
  out.report.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  out.report.covered = coverage(g, out.subgraph, config.params);
  out.report.upper_bound = upper_bound_estimate(g, config.params);
  out.report.ratio = coverage_ratio(out.report.covered, out.report.upper_bound);
  out.report.peak_edges_held = out.stats.peak_edges_held;
  return out;
}

}  // namespace recsub
