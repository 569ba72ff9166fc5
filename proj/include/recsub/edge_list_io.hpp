#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "recsub/error.hpp"
#include "recsub/graph.hpp"

namespace recsub {

// Edge-list text format:
//
//   # comment lines and trailing comments start with '#'
//   bipartite <l> <r> <m>
//   <u> <v>          (m lines, 0-based ids per side)
//
// The header is the first non-comment line.

struct EdgeListData {
  std::size_t l = 0;
  std::size_t r = 0;
  std::vector<Edge> edges;
  std::size_t duplicates_removed = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits on whitespace and parses every token as an unsigned integer.
inline bool parse_uints(std::string_view s, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i == s.size()) break;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
    if (ec != std::errc{}) return false;
    const auto next = static_cast<std::size_t>(ptr - s.data());
    if (next < s.size() && s[next] != ' ' && s[next] != '\t') return false;
    out.push_back(value);
    i = next;
  }
  return true;
}

}  // namespace detail

/// Parses the edge-list format. With `dedupe`, repeated (u, v) lines collapse
/// to one and a warning is recorded.
inline EdgeListData parse_edge_list(std::istream& in, bool dedupe = true) {
  EdgeListData out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t declared = 0;
  std::vector<std::uint64_t> nums;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = detail::trim(view);
    if (view.empty()) continue;
    if (!have_header) {
      constexpr std::string_view kTag = "bipartite";
      if (view.substr(0, kTag.size()) != kTag || !detail::parse_uints(view.substr(kTag.size()), nums) ||
          nums.size() != 3)
        throw ValidationError("expected header 'bipartite <l> <r> <m>' at line " + std::to_string(lineno));
      out.l = nums[0];
      out.r = nums[1];
      declared = nums[2];
      have_header = true;
      out.edges.reserve(declared);
      continue;
    }
    if (!detail::parse_uints(view, nums) || nums.size() != 2)
      throw ValidationError("malformed edge at line " + std::to_string(lineno));
    if (nums[0] >= out.l || nums[1] >= out.r)
      throw ValidationError("endpoint out of range at line " + std::to_string(lineno));
    out.edges.push_back({static_cast<Vertex>(nums[0]), static_cast<Vertex>(nums[1])});
  }
  if (in.bad()) throw IoError("read failure");
  if (!have_header) throw ValidationError("missing header 'bipartite <l> <r> <m>'");
  if (out.edges.size() != declared)
    throw ValidationError("header declares m=" + std::to_string(declared) + " but found " +
                          std::to_string(out.edges.size()) + " edge lines");
  if (dedupe) {
    std::sort(out.edges.begin(), out.edges.end());
    const auto end = std::unique(out.edges.begin(), out.edges.end());
    out.duplicates_removed = static_cast<std::size_t>(out.edges.end() - end);
    out.edges.erase(end, out.edges.end());
    if (out.duplicates_removed > 0)
      out.warnings.push_back("removed " + std::to_string(out.duplicates_removed) + " duplicate edge line(s)");
  }
  return out;
}

inline EdgeListData load_edge_list(const std::string& path, bool dedupe = true) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_edge_list(in, dedupe);
}

/// Loads a candidate graph; parallel lines are collapsed (file graphs are simple).
inline BipartiteGraph read_edge_list(const std::string& path, std::vector<std::string>* warnings = nullptr) {
  auto data = load_edge_list(path, true);
  if (warnings) warnings->insert(warnings->end(), data.warnings.begin(), data.warnings.end());
  return BipartiteGraph::from_edges(data.l, data.r, data.edges);
}

/// Loads a subgraph file verbatim (duplicates are kept so validation can report them).
inline RecSubgraph read_subgraph(const std::string& path) {
  const auto data = load_edge_list(path, false);
  return RecSubgraph::from_edges(data.l, data.r, data.edges);
}

inline void format_edge_list(std::ostream& out, std::size_t l, std::size_t r, const std::vector<Edge>& edges) {
  out << "bipartite " << l << ' ' << r << ' ' << edges.size() << '\n';
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

namespace detail {

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace detail

/// Canonical (u, v) order, one edge per line.
inline void write_edge_list(const BipartiteGraph& g, const std::string& path) {
  std::ostringstream os;
  format_edge_list(os, g.left_size(), g.right_size(), g.edges());
  detail::write_file(path, os.str());
}

inline void write_subgraph(const RecSubgraph& h, const std::string& path) {
  std::ostringstream os;
  format_edge_list(os, h.left_size(), h.right_size(), h.edges());
  detail::write_file(path, os.str());
}

}  // namespace recsub
