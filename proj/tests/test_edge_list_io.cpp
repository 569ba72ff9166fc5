#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "recsub/edge_list_io.hpp"
#include "recsub/generators.hpp"

using namespace recsub;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "recsub_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_text(const std::string& name, const std::string& text) {
  const auto path = temp_file(name);
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_edge_list(in);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ReadEdgeList, Basic) {
  const auto path = write_text("basic.txt", "bipartite 2 2 3\n0 0\n0 1\n1 0\n");
  const auto g = read_edge_list(path);
  EXPECT_EQ(g.left_size(), 2u);
  EXPECT_EQ(g.right_size(), 2u);
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(ReadEdgeList, CommentsAndBlankLines) {
  std::istringstream in("# generated\n\nbipartite 3 2 2  # header\n2 1\n\n# x\n0 0 # trailing\n");
  const auto data = parse_edge_list(in);
  EXPECT_EQ(data.l, 3u);
  EXPECT_EQ(data.edges, (std::vector<Edge>{{0, 0}, {2, 1}}));
}

TEST(ReadEdgeList, OutOfRangeReportsLine) {
  EXPECT_EQ(error_of("bipartite 2 2 3\n0 0\n0 1\n2 5\n"), "endpoint out of range at line 4");
}

TEST(ReadEdgeList, MalformedLines) {
  EXPECT_EQ(error_of("bipartite 2 2 1\n0 x\n"), "malformed edge at line 2");
  EXPECT_EQ(error_of("bipartite 2 2 1\n0 1 1\n"), "malformed edge at line 2");
  EXPECT_EQ(error_of("bipartite 2 2 1\n-1 1\n"), "malformed edge at line 2");
  EXPECT_EQ(error_of("graph 2 2 1\n0 1\n"), "expected header 'bipartite <l> <r> <m>' at line 1");
  EXPECT_EQ(error_of("# only comments\n"), "missing header 'bipartite <l> <r> <m>'");
}

TEST(ReadEdgeList, HeaderEdgeCountMismatch) {
  EXPECT_EQ(error_of("bipartite 2 2 3\n0 0\n"), "header declares m=3 but found 1 edge lines");
}

TEST(ReadEdgeList, DuplicatesRemovedWithWarning) {
  const auto path = write_text("dups.txt", "bipartite 2 2 2\n0 0\n0 0\n");
  std::vector<std::string> warnings;
  const auto g = read_edge_list(path, &warnings);
  EXPECT_EQ(g.edge_count(), 1u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("duplicate"), std::string::npos);
}

TEST(ReadEdgeList, MissingFileIsIoError) {
  EXPECT_THROW(read_edge_list("/nonexistent/graph.txt"), IoError);
}

TEST(WriteEdgeList, RoundTripIsCanonicalAndByteStable) {
  for (const std::string text : {"bipartite 2 2 3\n1 0\n0 1\n0 0\n", "bipartite 1 1 1\n0 0\n", "bipartite 3 4 0\n"}) {
    const auto in = write_text("rt_in.txt", text);
    const auto g = read_edge_list(in);
    const auto out1 = temp_file("rt_out1.txt").string();
    const auto out2 = temp_file("rt_out2.txt").string();
    write_edge_list(g, out1);
    write_edge_list(read_edge_list(out1), out2);
    EXPECT_EQ(slurp(out1), slurp(out2));
    EXPECT_EQ(read_edge_list(out1).edges(), g.edges());
  }
  const auto out = temp_file("canon.txt").string();
  write_edge_list(read_edge_list(write_text("c.txt", "bipartite 2 2 3\n1 0\n0 1\n0 0\n")), out);
  EXPECT_EQ(slurp(out), "bipartite 2 2 3\n0 0\n0 1\n1 0\n");
}

TEST(WriteEdgeList, RandomGraphRoundTrip) {
  const auto g = gen_erdos_renyi({40, 60, 0.1, 3});
  const auto path = temp_file("er.txt").string();
  write_edge_list(g, path);
  EXPECT_EQ(read_edge_list(path).edges(), g.edges());
}

TEST(Subgraph, KeepsDuplicatesForValidation) {
  const auto path = write_text("h.txt", "bipartite 1 2 2\n0 1\n0 1\n");
  const auto h = read_subgraph(path);
  EXPECT_EQ(h.out_degree(0), 2u);
  RecSubgraph s(2, 3);
  s.add(1, 2);
  s.add(0, 1);
  const auto out = temp_file("h_out.txt").string();
  write_subgraph(s, out);
  EXPECT_EQ(slurp(out), "bipartite 2 3 2\n0 1\n1 2\n");
}
