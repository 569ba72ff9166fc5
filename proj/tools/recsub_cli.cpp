// recsub: command-line front end for the recommendation-subgraph toolkit.
//
// Exit codes: 0 success, 1 validation/configuration error, 2 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "recsub/recsub.hpp"

using namespace recsub;
using nlohmann::json;

namespace {

struct GraphSource {
  std::string graph_path;
  std::string model = "fixed-degree";
  std::size_t l = 2500;
  std::size_t r = 10000;
  std::size_t d = 20;
  double p = 0.01;
  std::uint64_t seed = 1;
};

void add_model_options(CLI::App* cmd, GraphSource& src) {
  cmd->add_option("--model", src.model, "fixed-degree | erdos-renyi")->check(CLI::IsMember({"fixed-degree", "erdos-renyi"}));
  cmd->add_option("--l", src.l, "left side size");
  cmd->add_option("--r", src.r, "right side size");
  cmd->add_option("--d", src.d, "fixed-degree samples per left vertex");
  cmd->add_option("--p", src.p, "Erdos-Renyi edge probability");
  cmd->add_option("--seed", src.seed, "RNG seed");
}

BipartiteGraph generate(const GraphSource& src) {
  if (src.model == "erdos-renyi") return gen_erdos_renyi({src.l, src.r, src.p, src.seed});
  return gen_fixed_degree({src.l, src.r, src.d, src.seed});
}

BipartiteGraph load_or_generate(const GraphSource& src) {
  if (src.graph_path.empty()) return generate(src);
  std::vector<std::string> warnings;
  auto g = read_edge_list(src.graph_path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return g;
}

Algorithm algorithm_or_throw(const std::string& s) {
  if (auto a = parse_algorithm(s)) return *a;
  throw ConfigError("unknown algorithm '" + s + "'");
}

GreedyOrder greedy_order_or_throw(const std::string& s) {
  if (s == "input") return GreedyOrder::Input;
  if (s == "random") return GreedyOrder::RandomPermutation;
  throw ConfigError("unknown greedy order '" + s + "' (input | random)");
}

GreedyTiebreak tiebreak_or_throw(const std::string& s) {
  if (s == "capacity") return GreedyTiebreak::MostRemainingCapacity;
  if (s == "input") return GreedyTiebreak::Input;
  throw ConfigError("unknown tie-break '" + s + "' (capacity | input)");
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void print_report(const CoverageReport& rep, const SolveStats* stats) {
  std::cout << "covered " << rep.covered << '\n'
            << "upper_bound " << rep.upper_bound << '\n'
            << "ratio " << fixed(rep.ratio, 6) << '\n'
            << "elapsed_ms " << fixed(rep.elapsed_ms, 3) << '\n'
            << "peak_edges_held " << rep.peak_edges_held << '\n';
  if (stats) std::cout << "edges_touched " << stats->edges_touched << '\n' << "aux_state " << stats->aux_state << '\n';
}

// ---------------------------------------------------------------------------
// experiment configuration: defaults < spec file < flags

struct ExperimentConfig {
  ExperimentSpec spec;
  std::size_t c_from = 1;
  std::size_t c_to = 10;
  std::size_t a = 1;
  std::optional<std::vector<ProblemParams>> sweep;

  ExperimentSpec finalize() const {
    ExperimentSpec out = spec;
    out.sweep = sweep ? *sweep : ExperimentSpec::c_range(c_from, c_to, a);
    return out;
  }
};

std::vector<Algorithm> parse_algo_list(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const auto& n : names) out.push_back(algorithm_or_throw(n));
  return out;
}

std::vector<ProblemParams> parse_sweep_text(const std::string& text) {
  // "c:a,c:a,..."
  std::vector<ProblemParams> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("sweep entries must be c:a, got '" + item + "'");
    try {
      out.push_back({std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw ConfigError("sweep entries must be c:a, got '" + item + "'");
    }
  }
  return out;
}

void apply_spec_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("spec file " + path + ": " + e.what());
  }
  try {
    auto& s = cfg.spec;
    if (j.contains("model")) {
      const auto m = parse_model(j["model"].get<std::string>());
      if (!m) throw ConfigError("unknown model '" + j["model"].get<std::string>() + "'");
      s.model = *m;
    }
    if (j.contains("l")) s.l = j["l"].get<std::size_t>();
    if (j.contains("r")) s.r = j["r"].get<std::size_t>();
    if (j.contains("d")) s.d = j["d"].get<std::size_t>();
    if (j.contains("p")) s.p = j["p"].get<double>();
    if (j.contains("path")) s.path = j["path"].get<std::string>();
    if (j.contains("algos")) s.algos = parse_algo_list(j["algos"].get<std::vector<std::string>>());
    if (j.contains("trials")) s.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed")) s.base_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("epsilon")) s.epsilon = j["epsilon"].get<double>();
    if (j.contains("greedy_order")) s.greedy_order = greedy_order_or_throw(j["greedy_order"].get<std::string>());
    if (j.contains("greedy_tiebreak")) s.greedy_tiebreak = tiebreak_or_throw(j["greedy_tiebreak"].get<std::string>());
    if (j.contains("record_timing")) s.record_timing = j["record_timing"].get<bool>();
    if (j.contains("threads")) s.threads = j["threads"].get<std::size_t>();
    if (j.contains("c_range")) {
      const auto range = j["c_range"].get<std::vector<std::size_t>>();
      if (range.size() != 2) throw ConfigError("c_range must be [from, to]");
      cfg.c_from = range[0];
      cfg.c_to = range[1];
    }
    if (j.contains("a")) cfg.a = j["a"].get<std::size_t>();
    if (j.contains("sweep")) {
      std::vector<ProblemParams> sweep;
      for (const auto& pair : j["sweep"]) {
        const auto v = pair.get<std::vector<std::size_t>>();
        if (v.size() != 2) throw ConfigError("sweep entries must be [c, a]");
        sweep.push_back({v[0], v[1]});
      }
      cfg.sweep = sweep;
    }
  } catch (const json::exception& e) {
    throw ValidationError("spec file " + path + ": " + e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"recsub: (c, a)-recommendation subgraph solvers, bounds and experiments"};
  app.require_subcommand(1);

  // gen
  GraphSource gen_src;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random candidate graph as an edge-list file");
  add_model_options(gen, gen_src);
  gen->add_option("--out,-o", gen_out, "output edge-list file")->required();

  // solve
  GraphSource solve_src;
  std::string solve_algo = "greedy", solve_out, solve_order = "input", solve_tiebreak = "capacity";
  SolverConfig solve_cfg;
  auto* solve_cmd = app.add_subcommand("solve", "select a recommendation subgraph");
  solve_cmd->add_option("--graph,-g", solve_src.graph_path, "input edge-list file (otherwise generated)");
  add_model_options(solve_cmd, solve_src);
  solve_cmd->add_option("--algo", solve_algo, "sampling | greedy | partition");
  solve_cmd->add_option("--c", solve_cfg.params.c, "out-degree budget")->required();
  solve_cmd->add_option("--a", solve_cfg.params.a, "in-degree target")->required();
  solve_cmd->add_option("--epsilon", solve_cfg.epsilon, "partition accuracy in (0, 1]");
  solve_cmd->add_option("--solver-seed", solve_cfg.seed, "solver RNG seed");
  solve_cmd->add_option("--greedy-order", solve_order, "input | random");
  solve_cmd->add_option("--tiebreak", solve_tiebreak, "capacity | input");
  solve_cmd->add_option("--out,-o", solve_out, "write the selected subgraph here");

  // eval
  std::string eval_graph, eval_sub;
  std::size_t eval_a = 1;
  std::optional<std::size_t> eval_c;
  auto* eval = app.add_subcommand("eval", "score a subgraph file against its candidate graph");
  eval->add_option("--graph,-g", eval_graph)->required();
  eval->add_option("--subgraph,-s", eval_sub)->required();
  eval->add_option("--a", eval_a)->required();
  eval->add_option("--c", eval_c, "budget to validate against (default: max out-degree in the subgraph)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate closed-form bounds");
  bounds->require_subcommand(1);
  double rc_target = 0.95;
  std::size_t rc_amax = 5;
  auto* rc = bounds->add_subcommand("required-ck", "ck needed for a target ratio, a = 1..a-max");
  rc->add_option("--target", rc_target);
  rc->add_option("--a-max", rc_amax);
  double ar_from = 0.01, ar_to = 10.0, ar_step = 0.01;
  auto* ar = bounds->add_subcommand("approx-ratio", "sampling approximation ratio as a function of ck (a = 1)");
  ar->add_option("--from", ar_from);
  ar->add_option("--to", ar_to);
  ar->add_option("--step", ar_step);
  BoundInputs bin{.l = 2500, .r = 10000, .c = 4, .a = 1, .d = 20, .p = 0.01, .epsilon = 0.1};
  auto* bs = bounds->add_subcommand("sampling", "expected-coverage lower bound for sampling");
  auto* bg = bounds->add_subcommand("greedy", "expected-coverage lower bound for greedy on G(l,r,p)");
  auto* bc = bounds->add_subcommand("concentration", "tail bound for sampling coverage (a = 1)");
  for (auto* cmd : {bs, bg, bc}) {
    cmd->add_option("--l", bin.l);
    cmd->add_option("--r", bin.r);
    cmd->add_option("--c", bin.c);
    cmd->add_option("--a", bin.a);
  }
  bg->add_option("--p", bin.p);

  // oracle
  std::string oracle_graph;
  ProblemParams oracle_params;
  bool oracle_force = false;
  auto* oracle = app.add_subcommand("oracle", "exact optimum of a small instance");
  oracle->add_option("--graph,-g", oracle_graph)->required();
  oracle->add_option("--c", oracle_params.c)->required();
  oracle->add_option("--a", oracle_params.a)->required();
  oracle->add_flag("--force", oracle_force, "lift the size guard");

  // match (debug)
  std::string match_graph;
  std::optional<std::size_t> match_cutoff;
  auto* match = app.add_subcommand("match", "maximum or length-bounded bipartite matching (debug)");
  match->add_option("--graph,-g", match_graph)->required();
  match->add_option("--max-path-len", match_cutoff, "odd augmenting-path length cutoff");

  // experiment
  std::string exp_spec_file, exp_csv, exp_plot, exp_summary, exp_sweep, exp_model, exp_order, exp_tiebreak;
  std::vector<std::string> exp_algos;
  ExperimentConfig exp_flags;
  bool exp_timing = false;
  auto* exp = app.add_subcommand("experiment", "Monte-Carlo sweep to CSV and plot data");
  exp->add_option("--spec", exp_spec_file, "JSON spec file; flags override its values");
  exp->add_option("--model", exp_model, "fixed-degree | erdos-renyi | file");
  exp->add_option("--l", exp_flags.spec.l);
  exp->add_option("--r", exp_flags.spec.r);
  exp->add_option("--d", exp_flags.spec.d);
  exp->add_option("--p", exp_flags.spec.p);
  exp->add_option("--path", exp_flags.spec.path, "graph file for the file model");
  exp->add_option("--c-from", exp_flags.c_from);
  exp->add_option("--c-to", exp_flags.c_to);
  exp->add_option("--a", exp_flags.a);
  exp->add_option("--sweep", exp_sweep, "explicit c:a list, e.g. 2:1,4:2");
  exp->add_option("--algos", exp_algos, "sampling greedy partition")->delimiter(',');
  exp->add_option("--trials", exp_flags.spec.trials);
  exp->add_option("--seed", exp_flags.spec.base_seed);
  exp->add_option("--epsilon", exp_flags.spec.epsilon);
  exp->add_option("--greedy-order", exp_order, "input | random");
  exp->add_option("--tiebreak", exp_tiebreak, "capacity | input");
  exp->add_option("--threads", exp_flags.spec.threads);
  exp->add_flag("--timing", exp_timing, "record wall-clock time per solve (makes output run-dependent)");
  exp->add_option("--csv", exp_csv, "per-trial rows")->required();
  exp->add_option("--plot", exp_plot, "per-algorithm (c, mean, stderr) columns");
  exp->add_option("--summary", exp_summary, "per-cell aggregate CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*gen) {
    const auto g = generate(gen_src);
    write_edge_list(g, gen_out);
    std::cout << "l " << g.left_size() << "\nr " << g.right_size() << "\nm " << g.edge_count() << '\n';
    return 0;
  }

  if (*solve_cmd) {
    const auto g = load_or_generate(solve_src);
    solve_cfg.greedy_order = greedy_order_or_throw(solve_order);
    solve_cfg.greedy_tiebreak = tiebreak_or_throw(solve_tiebreak);
    if (!solve_cmd->count("--solver-seed")) solve_cfg.seed = solve_src.seed;
    for (const auto& w : param_warnings(g, solve_cfg.params)) std::cerr << "warning: " << w << '\n';
    const auto res = solve(g, algorithm_or_throw(solve_algo), solve_cfg);
    if (!solve_out.empty()) write_subgraph(res.subgraph, solve_out);
    print_report(res.report, &res.stats);
    return 0;
  }

  if (*eval) {
    const auto g = read_edge_list(eval_graph);
    const auto h = read_subgraph(eval_sub);
    std::size_t c = 1;
    for (std::size_t u = 0; u < h.left_size(); ++u) c = std::max(c, h.out_degree(static_cast<Vertex>(u)));
    const ProblemParams params{eval_c.value_or(c), eval_a};
    const auto violations = validate(g, h, params);
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
      return 1;
    }
    CoverageReport rep;
    rep.covered = coverage(g, h, params);
    rep.upper_bound = upper_bound_estimate(g, params);
    rep.ratio = coverage_ratio(rep.covered, rep.upper_bound);
    rep.peak_edges_held = h.edge_count();
    print_report(rep, nullptr);
    return 0;
  }

  if (*bounds) {
    if (*rc) {
      std::cout << "a\trequired_ck\n";
      for (std::size_t a = 1; a <= rc_amax; ++a) std::cout << a << '\t' << fixed(required_ck(a, rc_target), 2) << '\n';
    } else if (*ar) {
      if (!(ar_step > 0)) throw ConfigError("--step must be positive");
      std::cout << "ck\tratio\n";
      const auto n = static_cast<long>(std::floor((ar_to - ar_from) / ar_step + 1e-9));
      for (long i = 0; i <= n; ++i) {
        const double ck = ar_from + static_cast<double>(i) * ar_step;
        std::cout << fixed(ck, 6) << '\t' << fixed(sampling_approx_ratio(ck), 6) << '\n';
      }
    } else if (*bs) {
      std::cout << "ck " << fixed(bin.ck(), 6) << "\nexpected_coverage_lb " << fixed(sampling_lower_bound(bin), 6)
                << "\nfraction_lb " << fixed(sampling_lower_bound(bin) / bin.r, 6) << '\n';
    } else if (*bg) {
      std::cout << "gamma " << fixed(bin.gamma(), 6) << "\nexpected_coverage_lb "
                << fixed(greedy_expected_bound(bin), 6) << '\n';
    } else if (*bc) {
      const auto cb = concentration_bound(bin);
      std::cout << "threshold " << fixed(cb.threshold, 6) << "\nprob_bound " << cb.prob_bound << "\nlog_prob_bound "
                << fixed(cb.log_prob_bound, 6) << '\n';
    }
    return 0;
  }

  if (*oracle) {
    const auto g = read_edge_list(oracle_graph);
    std::cout << "opt " << exact_opt(g, oracle_params, oracle_force) << '\n';
    return 0;
  }

  if (*match) {
    const auto g = read_edge_list(match_graph);
    MatchingStats stats;
    const auto m = match_cutoff ? bounded_matching(g, *match_cutoff, &stats) : hopcroft_karp(g, &stats);
    std::cout << "size " << m.size << "\nphases " << stats.phases << '\n';
    for (std::size_t u = 0; u < m.match_left.size(); ++u)
      if (m.match_left[u] != kUnmatched) std::cout << u << ' ' << m.match_left[u] << '\n';
    return 0;
  }

  if (*exp) {
    ExperimentConfig cfg;
    cfg.spec.sweep.clear();
    if (!exp_spec_file.empty()) apply_spec_file(exp_spec_file, cfg);
    auto& s = cfg.spec;
    if (exp->count("--model")) {
      const auto m = parse_model(exp_model);
      if (!m) throw ConfigError("unknown model '" + exp_model + "'");
      s.model = *m;
    }
    if (exp->count("--l")) s.l = exp_flags.spec.l;
    if (exp->count("--r")) s.r = exp_flags.spec.r;
    if (exp->count("--d")) s.d = exp_flags.spec.d;
    if (exp->count("--p")) s.p = exp_flags.spec.p;
    if (exp->count("--path")) s.path = exp_flags.spec.path;
    if (exp->count("--trials")) s.trials = exp_flags.spec.trials;
    if (exp->count("--seed")) s.base_seed = exp_flags.spec.base_seed;
    if (exp->count("--epsilon")) s.epsilon = exp_flags.spec.epsilon;
    if (exp->count("--threads")) s.threads = exp_flags.spec.threads;
    if (exp->count("--algos")) s.algos = parse_algo_list(exp_algos);
    if (exp->count("--greedy-order")) s.greedy_order = greedy_order_or_throw(exp_order);
    if (exp->count("--tiebreak")) s.greedy_tiebreak = tiebreak_or_throw(exp_tiebreak);
    if (exp_timing) s.record_timing = true;
    if (exp->count("--c-from")) cfg.c_from = exp_flags.c_from;
    if (exp->count("--c-to")) cfg.c_to = exp_flags.c_to;
    if (exp->count("--a")) cfg.a = exp_flags.a;
    if (exp->count("--sweep")) cfg.sweep = parse_sweep_text(exp_sweep);
    else if (exp->count("--c-from") || exp->count("--c-to") || exp->count("--a")) cfg.sweep.reset();

    const auto spec = cfg.finalize();
    const auto result = run_experiment(spec);
    emit_csv(result.rows, exp_csv);
    if (!exp_plot.empty()) emit_plotdata(result.aggregates, exp_plot);
    if (!exp_summary.empty()) detail::write_file(exp_summary, format_summary(result.aggregates));
    std::cout << "rows " << result.rows.size() << "\nskipped " << result.skipped << "\nbound_violations "
              << result.bound_violations << '\n';
    if (result.bound_violations > 0) std::cerr << "warning: rows with covered > upper_bound were flagged\n";
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
