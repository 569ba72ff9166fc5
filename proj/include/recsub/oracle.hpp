#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "recsub/error.hpp"
#include "recsub/graph.hpp"

namespace recsub {

/// Directed network with integral capacities and paired residual arcs.
class FlowNetwork {
 public:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
    std::int64_t initial;
    std::size_t rev;
  };

  explicit FlowNetwork(std::size_t nodes) : out_(nodes) {}

  std::size_t node_count() const noexcept { return out_.size(); }

  /// Adds from -> to with capacity `cap`; returns a handle for set_capacity.
  std::pair<std::size_t, std::size_t> add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    if (cap < 0) throw ValidationError("negative arc capacity");
    out_[from].push_back({to, cap, cap, out_[to].size()});
    out_[to].push_back({from, 0, 0, out_[from].size() - 1});
    return {from, out_[from].size() - 1};
  }

  void set_capacity(std::pair<std::size_t, std::size_t> handle, std::int64_t cap) {
    if (cap < 0) throw ValidationError("negative arc capacity");
    out_[handle.first][handle.second].initial = cap;
  }

  /// Discard any flow and restore every arc to its configured capacity.
  void reset() {
    for (auto& arcs : out_)
      for (auto& arc : arcs) arc.cap = arc.initial;
  }

  std::vector<Arc>& arcs(std::size_t node) { return out_[node]; }
  const std::vector<Arc>& arcs(std::size_t node) const { return out_[node]; }

 private:
  std::vector<std::vector<Arc>> out_;
};

/// Dinic's algorithm. Resets the network first, so repeated calls after
/// set_capacity are independent.
inline std::int64_t max_flow(FlowNetwork& net, std::size_t source, std::size_t sink) {
  net.reset();
  if (source == sink) return 0;
  const std::size_t n = net.node_count();
  std::vector<int> level(n);
  std::vector<std::size_t> it(n);
  std::int64_t total = 0;

  const auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<std::size_t> q;
    level[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const auto x = q.front();
      q.pop();
      for (const auto& arc : net.arcs(x))
        if (arc.cap > 0 && level[arc.to] < 0) {
          level[arc.to] = level[x] + 1;
          q.push(arc.to);
        }
    }
    return level[sink] >= 0;
  };

  // Iterative blocking-flow DFS with current-arc pointers.
  const auto push = [&](std::int64_t limit) -> std::int64_t {
    std::vector<std::size_t> path;  // arc indices taken from each node on the stack
    std::vector<std::size_t> nodes{source};
    while (!nodes.empty()) {
      const auto x = nodes.back();
      if (x == sink) {
        std::int64_t f = limit;
        for (std::size_t i = 0; i < path.size(); ++i) f = std::min(f, net.arcs(nodes[i])[path[i]].cap);
        for (std::size_t i = 0; i < path.size(); ++i) {
          auto& arc = net.arcs(nodes[i])[path[i]];
          arc.cap -= f;
          net.arcs(arc.to)[arc.rev].cap += f;
        }
        return f;
      }
      auto& arcs = net.arcs(x);
      bool advanced = false;
      for (; it[x] < arcs.size(); ++it[x]) {
        const auto& arc = arcs[it[x]];
        if (arc.cap > 0 && level[arc.to] == level[x] + 1) {
          path.push_back(it[x]);
          nodes.push_back(arc.to);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        level[x] = -1;
        nodes.pop_back();
        if (!path.empty()) {
          path.pop_back();
          ++it[nodes.back()];
        }
      }
    }
    return 0;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    while (const auto f = push(std::numeric_limits<std::int64_t>::max())) total += f;
  }
  return total;
}

/// Flow encoding of degree-capped edge selection:
/// source -> u (cap c), u -> v (cap 1 per distinct candidate edge),
/// v -> sink (cap set per query).
class SelectionNetwork {
 public:
  SelectionNetwork(const BipartiteGraph& g, std::size_t c)
      : l_(g.left_size()), r_(g.right_size()), net_(l_ + r_ + 2) {
    for (std::size_t u = 0; u < l_; ++u) {
      net_.add_arc(source(), 1 + u, static_cast<std::int64_t>(c));
      Vertex last = std::numeric_limits<Vertex>::max();
      for (Vertex v : g.left_neighbors(static_cast<Vertex>(u))) {
        if (v != last) net_.add_arc(1 + u, 1 + l_ + v, 1);
        last = v;
      }
    }
    sink_arcs_.reserve(r_);
    for (std::size_t v = 0; v < r_; ++v) sink_arcs_.push_back(net_.add_arc(1 + l_ + v, sink(), 0));
  }

  std::size_t source() const noexcept { return 0; }
  std::size_t sink() const noexcept { return l_ + r_ + 1; }

  void set_sink_capacity(Vertex v, std::int64_t cap) { net_.set_capacity(sink_arcs_[v], cap); }

  std::int64_t solve() { return max_flow(net_, source(), sink()); }

 private:
  std::size_t l_;
  std::size_t r_;
  FlowNetwork net_;
  std::vector<std::pair<std::size_t, std::size_t>> sink_arcs_;
};

/// Maximum number of edges selectable with out-degree <= c and in-degree <= 1.
/// For a = 1 this is the optimum of the recommendation problem.
inline std::size_t max_b_matching(const BipartiteGraph& g, std::size_t c) {
  SelectionNetwork net(g, c);
  for (std::size_t v = 0; v < g.right_size(); ++v) net.set_sink_capacity(static_cast<Vertex>(v), 1);
  return static_cast<std::size_t>(net.solve());
}

inline constexpr std::size_t kOracleSizeLimit = 20;

/// Exact optimum of the (c, a) problem by enumerating target sets T of right
/// vertices, largest first, and testing whether max-flow with sink
/// capacities a on T saturates. Exponential in r: refuses l or r above
/// kOracleSizeLimit unless `force` is set.
inline std::size_t exact_opt(const BipartiteGraph& g, const ProblemParams& params, bool force = false) {
  params.check();
  if (!force && (g.left_size() > kOracleSizeLimit || g.right_size() > kOracleSizeLimit))
    throw ConfigError("exact oracle refuses graphs with l or r above " + std::to_string(kOracleSizeLimit) +
                      " (got l=" + std::to_string(g.left_size()) + ", r=" + std::to_string(g.right_size()) +
                      "); pass force to override");

  std::vector<Vertex> eligible;
  for (std::size_t v = 0; v < g.right_size(); ++v)
    if (g.distinct_right_degree(static_cast<Vertex>(v)) >= params.a) eligible.push_back(static_cast<Vertex>(v));
  const std::size_t upper = std::min(eligible.size(), g.left_size() * params.c / params.a);
  if (upper == 0) return 0;

  SelectionNetwork net(g, params.c);
  const auto a = static_cast<std::int64_t>(params.a);
  // Feasibility is closed under subsets, so the first feasible size is optimal.
  for (std::size_t size = upper; size > 0; --size) {
    std::vector<bool> pick(eligible.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      for (std::size_t i = 0; i < eligible.size(); ++i) net.set_sink_capacity(eligible[i], pick[i] ? a : 0);
      if (net.solve() == a * static_cast<std::int64_t>(size)) return size;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

}  // namespace recsub
