#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recsub/error.hpp"

namespace recsub {

/// Dense 0-based vertex id. Left and right sides are separate id spaces.
using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;  // left endpoint
  Vertex v = 0;  // right endpoint

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable bipartite candidate graph G = (L, R, E).
///
/// Both adjacency views are stored in offset-array form: `left_offsets_[u]`
/// .. `left_offsets_[u+1]` indexes the sorted right-neighbors of u, and the
/// same for the right side. Parallel edges are kept (the fixed-degree model
/// samples with replacement); `is_simple()` reports whether any exist.
class BipartiteGraph {
 public:
  BipartiteGraph() : left_offsets_(1, 0), right_offsets_(1, 0) {}

  /// Build from an edge list. Throws ValidationError naming the first edge
  /// index whose endpoint is out of range.
  static BipartiteGraph from_edges(std::size_t l, std::size_t r, std::span<const Edge> edges) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].u >= l || edges[i].v >= r) {
        throw ValidationError("endpoint out of range at edge index " + std::to_string(i) + ": (" +
                              std::to_string(edges[i].u) + "," + std::to_string(edges[i].v) +
                              ") with l=" + std::to_string(l) + ", r=" + std::to_string(r));
      }
    }
    BipartiteGraph g;
    g.l_ = l;
    g.r_ = r;
    const std::size_t m = edges.size();

    // Bucket by u (v order arbitrary), then redistribute by v walking u in
    // ascending order, then once more by u walking v in ascending order. Two
    // stable counting passes leave both views sorted in O(l + r + m).
    std::vector<std::size_t> tmp_offsets(l + 1, 0);
    for (const auto& e : edges) ++tmp_offsets[e.u + 1];
    for (std::size_t u = 0; u < l; ++u) tmp_offsets[u + 1] += tmp_offsets[u];
    std::vector<Vertex> tmp_adj(m);
    {
      auto cursor = tmp_offsets;
      for (const auto& e : edges) tmp_adj[cursor[e.u]++] = e.v;
    }

    g.right_offsets_.assign(r + 1, 0);
    for (const auto& e : edges) ++g.right_offsets_[e.v + 1];
    for (std::size_t v = 0; v < r; ++v) g.right_offsets_[v + 1] += g.right_offsets_[v];
    g.right_adj_.resize(m);
    {
      auto cursor = g.right_offsets_;
      for (std::size_t u = 0; u < l; ++u)
        for (std::size_t i = tmp_offsets[u]; i < tmp_offsets[u + 1]; ++i)
          g.right_adj_[cursor[tmp_adj[i]]++] = static_cast<Vertex>(u);
    }

    g.left_offsets_ = std::move(tmp_offsets);
    g.left_adj_.resize(m);
    {
      auto cursor = g.left_offsets_;
      for (std::size_t v = 0; v < r; ++v)
        for (std::size_t i = g.right_offsets_[v]; i < g.right_offsets_[v + 1]; ++i)
          g.left_adj_[cursor[g.right_adj_[i]]++] = static_cast<Vertex>(v);
    }

    g.simple_ = true;
    for (std::size_t u = 0; u < l && g.simple_; ++u) {
      const auto nb = g.left_neighbors(static_cast<Vertex>(u));
      g.simple_ = std::adjacent_find(nb.begin(), nb.end()) == nb.end();
    }
    return g;
  }

  std::size_t left_size() const noexcept { return l_; }
  std::size_t right_size() const noexcept { return r_; }
  std::size_t edge_count() const noexcept { return left_adj_.size(); }
  bool is_simple() const noexcept { return simple_; }

  /// k = l / r.
  double k() const noexcept { return r_ == 0 ? 0.0 : static_cast<double>(l_) / static_cast<double>(r_); }

  std::span<const Vertex> left_neighbors(Vertex u) const noexcept {
    return {left_adj_.data() + left_offsets_[u], left_adj_.data() + left_offsets_[u + 1]};
  }
  std::span<const Vertex> right_neighbors(Vertex v) const noexcept {
    return {right_adj_.data() + right_offsets_[v], right_adj_.data() + right_offsets_[v + 1]};
  }

  std::size_t left_degree(Vertex u) const noexcept { return left_offsets_[u + 1] - left_offsets_[u]; }
  std::size_t right_degree(Vertex v) const noexcept { return right_offsets_[v + 1] - right_offsets_[v]; }

  /// Number of distinct left neighbors of v (equals right_degree on simple graphs).
  std::size_t distinct_right_degree(Vertex v) const noexcept {
    const auto nb = right_neighbors(v);
    std::size_t n = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (i == 0 || nb[i] != nb[i - 1]) ++n;
    return n;
  }

  std::size_t max_left_degree() const noexcept {
    std::size_t best = 0;
    for (std::size_t u = 0; u < l_; ++u) best = std::max(best, left_degree(static_cast<Vertex>(u)));
    return best;
  }

  bool has_edge(Vertex u, Vertex v) const noexcept {
    if (u >= l_ || v >= r_) return false;
    const auto nb = left_neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// All edges in canonical (u, v) order, parallel edges repeated.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t u = 0; u < l_; ++u)
      for (Vertex v : left_neighbors(static_cast<Vertex>(u))) out.push_back({static_cast<Vertex>(u), v});
    return out;
  }

 private:
  std::size_t l_ = 0;
  std::size_t r_ = 0;
  bool simple_ = true;
  std::vector<std::size_t> left_offsets_;
  std::vector<Vertex> left_adj_;
  std::vector<std::size_t> right_offsets_;
  std::vector<Vertex> right_adj_;
};

inline BipartiteGraph build_graph(std::size_t l, std::size_t r, std::span<const Edge> edges) {
  return BipartiteGraph::from_edges(l, r, edges);
}

/// (c, a): out-degree budget per left vertex and in-degree target per right vertex.
struct ProblemParams {
  std::size_t c = 1;
  std::size_t a = 1;

  void check() const {
    if (c < 1) throw ConfigError("c must be >= 1");
    if (a < 1) throw ConfigError("a must be >= 1");
  }
};

/// Non-fatal observations about a parameter choice on a given graph.
inline std::vector<std::string> param_warnings(const BipartiteGraph& g, const ProblemParams& params) {
  std::vector<std::string> out;
  const auto dmax = g.max_left_degree();
  if (g.edge_count() > 0 && params.c >= dmax)
    out.push_back("c=" + std::to_string(params.c) + " >= max left degree " + std::to_string(dmax) +
                  "; sampling keeps every candidate edge");
  return out;
}

/// A selected subgraph H: for every left vertex, the right vertices it links to.
class RecSubgraph {
 public:
  RecSubgraph() = default;
  RecSubgraph(std::size_t l, std::size_t r) : r_(r), chosen_(l) {}

  std::size_t left_size() const noexcept { return chosen_.size(); }
  std::size_t right_size() const noexcept { return r_; }

  void add(Vertex u, Vertex v) { chosen_[u].push_back(v); }

  std::span<const Vertex> chosen(Vertex u) const noexcept { return chosen_[u]; }
  std::size_t out_degree(Vertex u) const noexcept { return chosen_[u].size(); }

  std::size_t edge_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : chosen_) n += c.size();
    return n;
  }

  /// Edges in canonical (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t u = 0; u < chosen_.size(); ++u) {
      std::vector<Vertex> vs = chosen_[u];
      std::sort(vs.begin(), vs.end());
      for (Vertex v : vs) out.push_back({static_cast<Vertex>(u), v});
    }
    return out;
  }

  static RecSubgraph from_edges(std::size_t l, std::size_t r, std::span<const Edge> edges) {
    RecSubgraph h(l, r);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].u >= l || edges[i].v >= r)
        throw ValidationError("subgraph endpoint out of range at edge index " + std::to_string(i));
      h.add(edges[i].u, edges[i].v);
    }
    return h;
  }

 private:
  std::size_t r_ = 0;
  std::vector<std::vector<Vertex>> chosen_;
};

/// Outcome of one solve, measured against the upper-bound estimate.
struct CoverageReport {
  std::size_t covered = 0;
  std::size_t upper_bound = 0;
  double ratio = 0.0;
  double elapsed_ms = 0.0;
  std::size_t peak_edges_held = 0;
};

/// covered / upper_bound, with 0/0 defined as 1.
inline double coverage_ratio(std::size_t covered, std::size_t upper_bound) noexcept {
  if (upper_bound == 0) return covered == 0 ? 1.0 : 0.0;
  return static_cast<double>(covered) / static_cast<double>(upper_bound);
}

namespace detail {

inline void collect_structural_violations(const BipartiteGraph& g, const RecSubgraph& h,
                                          std::size_t cap, std::vector<std::string>& out) {
  if (h.left_size() != g.left_size() || h.right_size() != g.right_size()) {
    out.push_back("dimension mismatch: subgraph is " + std::to_string(h.left_size()) + "x" +
                  std::to_string(h.right_size()) + ", graph is " + std::to_string(g.left_size()) + "x" +
                  std::to_string(g.right_size()));
    return;
  }
  std::vector<Vertex> sorted;
  for (std::size_t ui = 0; ui < h.left_size(); ++ui) {
    const auto u = static_cast<Vertex>(ui);
    const auto chosen = h.chosen(u);
    if (chosen.size() > cap) out.push_back("degree cap violated at u=" + std::to_string(u));
    for (Vertex v : chosen)
      if (!g.has_edge(u, v))
        out.push_back("non-candidate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    sorted.assign(chosen.begin(), chosen.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1] && (i == 1 || sorted[i - 2] != sorted[i]))
        out.push_back("duplicate edge (" + std::to_string(u) + "," + std::to_string(sorted[i]) + ")");
  }
}

}  // namespace detail

/// Every violated RecSubgraph invariant, in left-vertex order. Empty means valid.
inline std::vector<std::string> validate(const BipartiteGraph& g, const RecSubgraph& h,
                                         const ProblemParams& params) {
  std::vector<std::string> out;
  detail::collect_structural_violations(g, h, params.c, out);
  return out;
}

/// |{v : deg_H(v) >= a}|. H must be a duplicate-free subgraph of G; the
/// out-degree cap is not checked here (see the ProblemParams overload).
inline std::size_t coverage(const BipartiteGraph& g, const RecSubgraph& h, std::size_t a) {
  std::vector<std::string> violations;
  detail::collect_structural_violations(g, h, static_cast<std::size_t>(-1), violations);
  if (!violations.empty()) throw ValidationError("invalid subgraph: " + violations.front());
  std::vector<std::uint32_t> indeg(g.right_size(), 0);
  for (std::size_t u = 0; u < h.left_size(); ++u)
    for (Vertex v : h.chosen(static_cast<Vertex>(u))) ++indeg[v];
  return static_cast<std::size_t>(
      std::count_if(indeg.begin(), indeg.end(), [a](std::uint32_t d) { return d >= a; }));
}

/// Coverage with the full (c, a) validation; throws on the first violation.
inline std::size_t coverage(const BipartiteGraph& g, const RecSubgraph& h, const ProblemParams& params) {
  const auto violations = validate(g, h, params);
  if (!violations.empty()) throw ValidationError("invalid subgraph: " + violations.front());
  return coverage(g, h, params.a);
}

}  // namespace recsub
