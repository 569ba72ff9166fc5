#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "recsub/algorithms.hpp"
#include "recsub/edge_list_io.hpp"
#include "recsub/error.hpp"
#include "recsub/generators.hpp"
#include "recsub/graph.hpp"
#include "recsub/rng.hpp"

namespace recsub {

enum class Model { FixedDegree, ErdosRenyi, File };

inline std::string_view to_string(Model m) noexcept {
  switch (m) {
    case Model::FixedDegree: return "fixed-degree";
    case Model::ErdosRenyi: return "erdos-renyi";
    case Model::File: return "file";
  }
  return "?";
}

inline std::optional<Model> parse_model(std::string_view s) noexcept {
  if (s == "fixed-degree") return Model::FixedDegree;
  if (s == "erdos-renyi") return Model::ErdosRenyi;
  if (s == "file") return Model::File;
  return std::nullopt;
}

/// A Monte-Carlo sweep: one graph per trial, every (c, a) cell and algorithm
/// solved on it.
struct ExperimentSpec {
  Model model = Model::FixedDegree;
  std::size_t l = 2500;
  std::size_t r = 10000;
  std::size_t d = 20;
  double p = 0.0;
  std::string path;
  std::vector<ProblemParams> sweep;
  std::vector<Algorithm> algos{Algorithm::Sampling, Algorithm::Greedy};
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  double epsilon = 0.1;
  GreedyOrder greedy_order = GreedyOrder::Input;
  GreedyTiebreak greedy_tiebreak = GreedyTiebreak::MostRemainingCapacity;
  /// Wall-clock timings make output run-dependent; when off, elapsed_ms is
  /// written as 0 so identical specs give byte-identical CSV.
  bool record_timing = false;
  std::size_t threads = 1;

  void check() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (sweep.empty()) throw ConfigError("sweep must contain at least one (c, a) pair");
    if (algos.empty()) throw ConfigError("at least one algorithm is required");
    for (const auto& params : sweep) params.check();
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
    if (model == Model::FixedDegree) FixedDegreeSpec{l, r, d, 0}.check();
    if (model == Model::ErdosRenyi) ErdosRenyiSpec{l, r, p, 0}.check();
    if (model == Model::File && path.empty()) throw ConfigError("file model requires a path");
  }

  /// c = c_from..c_to at a fixed a.
  static std::vector<ProblemParams> c_range(std::size_t c_from, std::size_t c_to, std::size_t a) {
    std::vector<ProblemParams> out;
    for (std::size_t c = c_from; c <= c_to; ++c) out.push_back({c, a});
    return out;
  }
};

struct ExperimentRow {
  std::string model;
  std::size_t l = 0;
  std::size_t r = 0;
  std::string d_or_p;
  std::size_t c = 0;
  std::size_t a = 0;
  Algorithm algo = Algorithm::Sampling;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t covered = 0;
  std::size_t upper_bound = 0;
  double ratio = 0.0;
  double elapsed_ms = 0.0;
  // Not part of the CSV.
  std::optional<std::string> skipped;
  bool bound_violated = false;
  SolveStats stats;
};

/// Summary of one (c, a, algo) cell across trials.
struct Aggregate {
  std::size_t c = 0;
  std::size_t a = 0;
  Algorithm algo = Algorithm::Sampling;
  std::size_t n = 0;
  double mean_ratio = 0;
  double sd_ratio = 0;      // sample standard deviation
  double stderr_ratio = 0;
  double mean_covered = 0;
  double mean_upper_bound = 0;
  double mean_elapsed_ms = 0;
  double mean_edges_touched = 0;
  double mean_peak_edges_held = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::vector<Aggregate> aggregates;
  std::size_t skipped = 0;
  std::size_t bound_violations = 0;
};

namespace detail {

inline std::string format_double(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

inline std::string model_param(const ExperimentSpec& spec) {
  switch (spec.model) {
    case Model::FixedDegree: return std::to_string(spec.d);
    case Model::ErdosRenyi: return format_double("%.6g", spec.p);
    case Model::File: return "NA";
  }
  return "NA";
}

inline std::vector<ExperimentRow> run_trial(const ExperimentSpec& spec, const BipartiteGraph* shared,
                                            std::size_t trial) {
  const std::uint64_t seed = derive_seed(spec.base_seed, trial);
  BipartiteGraph owned;
  if (spec.model == Model::FixedDegree)
    owned = gen_fixed_degree({spec.l, spec.r, spec.d, seed});
  else if (spec.model == Model::ErdosRenyi)
    owned = gen_erdos_renyi({spec.l, spec.r, spec.p, seed});
  const BipartiteGraph& g = shared ? *shared : owned;

  std::vector<ExperimentRow> rows;
  for (const auto& params : spec.sweep) {
    for (const auto algo : spec.algos) {
      ExperimentRow row;
      row.model = std::string(to_string(spec.model));
      row.l = g.left_size();
      row.r = g.right_size();
      row.d_or_p = model_param(spec);
      row.c = params.c;
      row.a = params.a;
      row.algo = algo;
      row.trial = trial;
      row.seed = seed;
      if (algo == Algorithm::Partition && params.a > params.c) {
        row.skipped = "partition requires a <= c";
        rows.push_back(std::move(row));
        continue;
      }
      SolverConfig config{params, seed, spec.epsilon, spec.greedy_order, spec.greedy_tiebreak};
      const SolveResult result = solve(g, algo, config);
      row.covered = result.report.covered;
      row.upper_bound = result.report.upper_bound;
      row.ratio = result.report.ratio;
      row.elapsed_ms = spec.record_timing ? result.report.elapsed_ms : 0.0;
      row.bound_violated = row.covered > row.upper_bound;
      row.stats = result.stats;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace detail

/// Per-(c, a, algo) mean, sample standard deviation and standard error of the
/// ratio, over non-skipped rows. Output is ordered by (a, c, algo).
inline std::vector<Aggregate> aggregate(const std::vector<ExperimentRow>& rows) {
  std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<const ExperimentRow*>> cells;
  for (const auto& row : rows)
    if (!row.skipped) cells[{row.a, row.c, static_cast<int>(row.algo)}].push_back(&row);
  std::vector<Aggregate> out;
  for (const auto& [key, members] : cells) {
    Aggregate agg;
    agg.a = std::get<0>(key);
    agg.c = std::get<1>(key);
    agg.algo = static_cast<Algorithm>(std::get<2>(key));
    agg.n = members.size();
    const double n = static_cast<double>(agg.n);
    for (const auto* row : members) {
      agg.mean_ratio += row->ratio / n;
      agg.mean_covered += static_cast<double>(row->covered) / n;
      agg.mean_upper_bound += static_cast<double>(row->upper_bound) / n;
      agg.mean_elapsed_ms += row->elapsed_ms / n;
      agg.mean_edges_touched += static_cast<double>(row->stats.edges_touched) / n;
      agg.mean_peak_edges_held += static_cast<double>(row->stats.peak_edges_held) / n;
    }
    if (agg.n > 1) {
      double ss = 0;
      for (const auto* row : members) ss += (row->ratio - agg.mean_ratio) * (row->ratio - agg.mean_ratio);
      agg.sd_ratio = std::sqrt(ss / (n - 1));
      agg.stderr_ratio = agg.sd_ratio / std::sqrt(n);
    }
    out.push_back(agg);
  }
  return out;
}

/// Runs every trial (optionally on several threads) and returns rows in
/// (trial, sweep cell, algorithm) order regardless of scheduling.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.check();
  std::optional<BipartiteGraph> shared;
  if (spec.model == Model::File) shared = read_edge_list(spec.path);

  std::vector<std::vector<ExperimentRow>> per_trial(spec.trials);
  const std::size_t workers = std::clamp<std::size_t>(spec.threads, 1, spec.trials);
  if (workers == 1) {
    for (std::size_t t = 0; t < spec.trials; ++t)
      per_trial[t] = detail::run_trial(spec, shared ? &*shared : nullptr, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t; (t = next.fetch_add(1)) < spec.trials;)
            per_trial[t] = detail::run_trial(spec, shared ? &*shared : nullptr, t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  for (auto& rows : per_trial)
    for (auto& row : rows) {
      if (row.skipped) ++result.skipped;
      if (row.bound_violated) ++result.bound_violations;
      result.rows.push_back(std::move(row));
    }
  result.aggregates = aggregate(result.rows);
  return result;
}

inline constexpr std::string_view kCsvHeader =
    "model,l,r,d_or_p,c,a,algo,trial,seed,covered,upper_bound,ratio,elapsed_ms";

/// Skipped rows carry NA in the measurement columns.
inline std::string format_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& row : rows) {
    os << row.model << ',' << row.l << ',' << row.r << ',' << row.d_or_p << ',' << row.c << ',' << row.a << ','
       << to_string(row.algo) << ',' << row.trial << ',' << row.seed << ',';
    if (row.skipped) {
      os << "NA,NA,NA,NA\n";
      continue;
    }
    os << row.covered << ',' << row.upper_bound << ',' << detail::format_double("%.6f", row.ratio) << ','
       << detail::format_double("%.3f", row.elapsed_ms) << '\n';
  }
  return os.str();
}

inline void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path) {
  detail::write_file(path, format_csv(rows));
}

/// Whitespace-separated plot data: one block per a (blank-line separated),
/// rows keyed by c, and a (mean, stderr) column pair per algorithm.
inline std::string format_plotdata(const std::vector<Aggregate>& aggregates) {
  std::vector<Algorithm> algos;
  std::map<std::size_t, std::map<std::size_t, std::map<int, const Aggregate*>>> by_a;
  for (const auto& agg : aggregates) {
    if (std::find(algos.begin(), algos.end(), agg.algo) == algos.end()) algos.push_back(agg.algo);
    by_a[agg.a][agg.c][static_cast<int>(agg.algo)] = &agg;
  }
  std::sort(algos.begin(), algos.end());
  std::ostringstream os;
  bool first_block = true;
  for (const auto& [a, by_c] : by_a) {
    if (!first_block) os << "\n\n";
    first_block = false;
    os << "# a=" << a << "\n# c";
    for (const auto algo : algos) os << ' ' << to_string(algo) << "_mean " << to_string(algo) << "_stderr";
    os << '\n';
    for (const auto& [c, cells] : by_c) {
      os << c;
      for (const auto algo : algos) {
        const auto it = cells.find(static_cast<int>(algo));
        if (it == cells.end()) {
          os << " NA NA";
        } else {
          os << ' ' << detail::format_double("%.6f", it->second->mean_ratio) << ' '
             << detail::format_double("%.6f", it->second->stderr_ratio);
        }
      }
      os << '\n';
    }
  }
  return os.str();
}

inline void emit_plotdata(const std::vector<Aggregate>& aggregates, const std::string& path) {
  detail::write_file(path, format_plotdata(aggregates));
}

/// One line per cell: counts, ratio statistics, coverage, timing and work counters.
inline std::string format_summary(const std::vector<Aggregate>& aggregates) {
  std::ostringstream os;
  os << "c,a,algo,n,mean_ratio,sd_ratio,stderr_ratio,mean_covered,mean_upper_bound,mean_elapsed_ms,"
        "mean_edges_touched,mean_peak_edges_held\n";
  for (const auto& agg : aggregates) {
    os << agg.c << ',' << agg.a << ',' << to_string(agg.algo) << ',' << agg.n << ','
       << detail::format_double("%.6f", agg.mean_ratio) << ',' << detail::format_double("%.6f", agg.sd_ratio) << ','
       << detail::format_double("%.6f", agg.stderr_ratio) << ',' << detail::format_double("%.3f", agg.mean_covered)
       << ',' << detail::format_double("%.3f", agg.mean_upper_bound) << ','
       << detail::format_double("%.3f", agg.mean_elapsed_ms) << ','
       << detail::format_double("%.1f", agg.mean_edges_touched) << ','
       << detail::format_double("%.1f", agg.mean_peak_edges_held) << '\n';
  }
  return os.str();
}

}  // namespace recsub
