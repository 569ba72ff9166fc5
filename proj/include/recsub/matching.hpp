#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "recsub/graph.hpp"

namespace recsub {

inline constexpr Vertex kUnmatched = std::numeric_limits<Vertex>::max();

/// A partial bijection between L and R.
struct Matching {
  std::vector<Vertex> match_left;   // per u: matched v or kUnmatched
  std::vector<Vertex> match_right;  // per v: matched u or kUnmatched
  std::size_t size = 0;

  Matching() = default;
  Matching(std::size_t l, std::size_t r) : match_left(l, kUnmatched), match_right(r, kUnmatched) {}

  void add(Vertex u, Vertex v) {
    match_left[u] = v;
    match_right[v] = u;
    ++size;
  }

  /// Mutual-inverse check plus size consistency.
  bool is_consistent() const {
    std::size_t n = 0;
    for (std::size_t u = 0; u < match_left.size(); ++u) {
      const Vertex v = match_left[u];
      if (v == kUnmatched) continue;
      if (v >= match_right.size() || match_right[v] != u) return false;
      ++n;
    }
    for (std::size_t v = 0; v < match_right.size(); ++v) {
      const Vertex u = match_right[v];
      if (u != kUnmatched && (u >= match_left.size() || match_left[u] != v)) return false;
    }
    return n == size;
  }

  /// Every matched pair is an edge of g.
  bool is_valid_for(const BipartiteGraph& g) const {
    if (match_left.size() != g.left_size() || match_right.size() != g.right_size()) return false;
    if (!is_consistent()) return false;
    for (std::size_t u = 0; u < match_left.size(); ++u)
      if (match_left[u] != kUnmatched && !g.has_edge(static_cast<Vertex>(u), match_left[u])) return false;
    return true;
  }
};

struct MatchingStats {
  std::size_t phases = 0;         // BFS rounds that led to at least one augmentation
  std::size_t augmentations = 0;
  std::size_t edges_scanned = 0;
};

namespace detail {

/// Hopcroft-Karp from `m`, stopping once the shortest augmenting path has more
/// than `max_path_len` edges (or none remains). Each phase augments along a
/// maximal set of vertex-disjoint shortest paths, so shortest-path length
/// strictly increases between phases.
inline void hopcroft_karp_until(const BipartiteGraph& g, Matching& m, std::size_t max_path_len,
                                MatchingStats* stats) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  const std::size_t l = g.left_size();
  std::vector<std::size_t> dist(l);
  std::vector<Vertex> queue;
  queue.reserve(l);
  std::vector<std::size_t> cursor(l);
  std::vector<Vertex> stack;
  std::vector<Vertex> took;

  for (;;) {
    // Layered BFS over left vertices; layer t sits at alternating depth 2t.
    queue.clear();
    for (std::size_t u = 0; u < l; ++u) {
      if (m.match_left[u] == kUnmatched) {
        dist[u] = 0;
        queue.push_back(static_cast<Vertex>(u));
      } else {
        dist[u] = kInf;
      }
    }
    std::size_t last_layer = kInf;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      if (dist[u] >= last_layer) break;
      for (Vertex v : g.left_neighbors(u)) {
        if (stats) ++stats->edges_scanned;
        const Vertex w = m.match_right[v];
        if (w == kUnmatched) {
          last_layer = dist[u];
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    if (last_layer == kInf) return;
    if (2 * last_layer + 1 > max_path_len) return;

    // Vertex-disjoint DFS along the layers; dead ends are retired by setting
    // their distance to infinity.
    bool augmented = false;
    for (std::size_t u = 0; u < l; ++u) cursor[u] = 0;
    for (std::size_t root = 0; root < l; ++root) {
      if (m.match_left[root] != kUnmatched || dist[root] != 0) continue;
      stack.assign(1, static_cast<Vertex>(root));
      took.assign(1, kUnmatched);
      while (!stack.empty()) {
        const Vertex u = stack.back();
        const auto nb = g.left_neighbors(u);
        if (cursor[u] == nb.size()) {
          dist[u] = kInf;
          stack.pop_back();
          took.pop_back();
          continue;
        }
        const Vertex v = nb[cursor[u]++];
        if (stats) ++stats->edges_scanned;
        const Vertex w = m.match_right[v];
        if (w == kUnmatched) {
          if (dist[u] != last_layer) continue;
          took.back() = v;
          for (std::size_t i = 0; i < stack.size(); ++i) {
            m.match_left[stack[i]] = took[i];
            m.match_right[took[i]] = stack[i];
          }
          ++m.size;
          if (stats) ++stats->augmentations;
          augmented = true;
          for (Vertex s : stack) dist[s] = kInf;
          break;
        }
        if (dist[u] < last_layer && dist[w] == dist[u] + 1) {
          took.back() = v;
          stack.push_back(w);
          took.push_back(kUnmatched);
        }
      }
    }
    if (stats && augmented) ++stats->phases;
    if (!augmented) return;
  }
}

}  // namespace detail

/// Maximum-cardinality matching in O(|E| sqrt(|V|)).
inline Matching hopcroft_karp(const BipartiteGraph& g, MatchingStats* stats = nullptr) {
  Matching m(g.left_size(), g.right_size());
  detail::hopcroft_karp_until(g, m, std::numeric_limits<std::size_t>::max(), stats);
  return m;
}

/// Extend `initial` until no augmenting path with at most `max_path_len`
/// edges remains. If the shortest remaining augmenting path has length
/// > 2t-1, the result has size >= (1 - 1/t) times the maximum.
/// `max_path_len` must be odd.
inline Matching bounded_matching(const BipartiteGraph& g, std::size_t max_path_len, Matching initial,
                                 MatchingStats* stats = nullptr) {
  if (max_path_len % 2 == 0) throw ConfigError("augmenting path length cutoff must be odd");
  if (initial.match_left.size() != g.left_size() || initial.match_right.size() != g.right_size() ||
      !initial.is_consistent())
    throw ValidationError("initial matching does not fit the graph");
  detail::hopcroft_karp_until(g, initial, max_path_len, stats);
  return initial;
}

inline Matching bounded_matching(const BipartiteGraph& g, std::size_t max_path_len,
                                 MatchingStats* stats = nullptr) {
  return bounded_matching(g, max_path_len, Matching(g.left_size(), g.right_size()), stats);
}

}  // namespace recsub
