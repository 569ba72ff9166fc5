#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RECSUB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "recsub_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const std::string kSamples = RECSUB_SAMPLES_DIR;

}  // namespace

TEST(Cli, GenThenSolveThenEval) {
  const auto g = tmp("g.txt"), h = tmp("h.txt");
  ASSERT_EQ(run("gen --model erdos-renyi --l 30 --r 60 --p 0.1 --seed 5 -o " + g).code, 0);
  const auto solved = run("solve -g " + g + " --algo greedy --c 2 --a 1 -o " + h);
  ASSERT_EQ(solved.code, 0);
  const auto evaluated = run("eval -g " + g + " -s " + h + " --a 1 --c 2");
  ASSERT_EQ(evaluated.code, 0);
  const auto covered = solved.out.substr(0, solved.out.find('\n'));
  EXPECT_EQ(evaluated.out.substr(0, evaluated.out.find('\n')), covered);
}

TEST(Cli, GenIsDeterministic) {
  const auto a = tmp("ga.txt"), b = tmp("gb.txt");
  ASSERT_EQ(run("gen --l 50 --r 80 --d 4 --seed 9 -o " + a).code, 0);
  ASSERT_EQ(run("gen --l 50 --r 80 --d 4 --seed 9 -o " + b).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, SolveAdversarialInstance) {
  const auto r = run("solve -g " + kSamples + "/adversarial.txt --algo greedy --tiebreak input --c 1 --a 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 10), "covered 1\n");
  EXPECT_EQ(run("oracle -g " + kSamples + "/adversarial.txt --c 1 --a 1").out, "opt 2\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("solve -g /nonexistent/g.txt --c 1 --a 1").code, 2);
  EXPECT_EQ(run("solve -g " + kSamples + "/adversarial.txt --c 0 --a 1").code, 1);
  EXPECT_EQ(run("solve -g " + kSamples + "/adversarial.txt --algo partition --c 1 --a 2").code, 1);
  EXPECT_EQ(run("solve -g " + kSamples + "/adversarial.txt --algo bogus --c 1 --a 1").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("match -g " + kSamples + "/adversarial.txt --max-path-len 2").code, 1);
  EXPECT_EQ(run("experiment --spec /nonexistent/spec.json --csv " + tmp("x.csv")).code, 2);
}

TEST(Cli, EvalRejectsOverBudgetSubgraph) {
  const auto h = tmp("over.txt");
  std::ofstream(h) << "bipartite 2 2 2\n0 0\n0 1\n";
  EXPECT_EQ(run("eval -g " + kSamples + "/adversarial.txt -s " + h + " --a 1 --c 1").code, 1);
  EXPECT_EQ(run("eval -g " + kSamples + "/adversarial.txt -s " + h + " --a 1 --c 2").code, 0);
  const auto bad = tmp("noncandidate.txt");
  std::ofstream(bad) << "bipartite 2 2 1\n1 1\n";
  EXPECT_EQ(run("eval -g " + kSamples + "/adversarial.txt -s " + bad + " --a 1").code, 1);
}

TEST(Cli, OracleSizeGuard) {
  const auto g = tmp("big.txt");
  ASSERT_EQ(run("gen --model erdos-renyi --l 4 --r 21 --p 0.3 --seed 1 -o " + g).code, 0);
  EXPECT_EQ(run("oracle -g " + g + " --c 1 --a 1").code, 1);
  EXPECT_EQ(run("oracle -g " + g + " --c 1 --a 1 --force").code, 0);
}

TEST(Cli, BoundsRequiredCk) {
  const auto r = run("bounds required-ck --target 0.95");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a\trequired_ck\n1\t3.00\n2\t4.74\n3\t7.05\n4\t10.01\n5\t13.48\n");
}

TEST(Cli, BoundsOtherTables) {
  EXPECT_EQ(run("bounds approx-ratio --from 1 --to 1 --step 0.5").out, "ck\tratio\n1.000000\t0.632121\n");
  EXPECT_EQ(run("bounds sampling --l 2500 --r 10000 --c 4 --a 1").code, 0);
  EXPECT_EQ(run("bounds greedy --l 1000 --r 1100 --c 3 --a 2 --p 0.0138155").code, 0);
  EXPECT_EQ(run("bounds concentration --l 2500 --r 10000 --c 4").code, 0);
  EXPECT_EQ(run("bounds required-ck --target 1.5").code, 1);
}

TEST(Cli, MatchVerb) {
  const auto r = run("match -g " + kSamples + "/adversarial.txt");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 7), "size 2\n");
}

TEST(Cli, ExperimentPrecedenceAndDeterminism) {
  const auto spec = tmp("spec.json");
  std::ofstream(spec) << R"({"model": "fixed-degree", "l": 20, "r": 80, "d": 5, "c_range": [1, 3], "trials": 4,
                            "algos": ["sampling", "greedy"], "seed": 11})";
  const auto a = tmp("a.csv"), b = tmp("b.csv"), c = tmp("c.csv"), plot = tmp("p.dat"), sum = tmp("s.csv");
  const auto r1 = run("experiment --spec " + spec + " --csv " + a + " --plot " + plot + " --summary " + sum);
  ASSERT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out.substr(0, 8), "rows 24\n");
  ASSERT_EQ(run("experiment --spec " + spec + " --csv " + b + " --threads 2").code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(plot).empty());
  EXPECT_FALSE(slurp(sum).empty());

  // Flags override the spec file; unspecified values fall back to the file, then to defaults.
  const auto r2 = run("experiment --spec " + spec + " --csv " + c + " --trials 1 --algos greedy");
  ASSERT_EQ(r2.code, 0);
  EXPECT_EQ(r2.out.substr(0, 7), "rows 3\n");
  EXPECT_NE(slurp(c).find("fixed-degree,20,80,5,"), std::string::npos);
}

TEST(Cli, ExperimentFromFlagsOnly) {
  const auto out = tmp("flags.csv");
  const auto r = run("experiment --model erdos-renyi --l 30 --r 60 --p 0.1 --sweep 2:1,4:2 --algos partition --trials 2 --csv " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 7), "rows 4\n");
  EXPECT_EQ(run("experiment --sweep 2-1 --csv " + out).code, 1);
}
