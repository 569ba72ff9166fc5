#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "recsub/error.hpp"
#include "recsub/graph.hpp"

namespace recsub {

/// Parameters shared by the closed-form bounds. Not every bound reads every
/// field: the sampling bounds use (l, r, c, a), the greedy bound adds p.
struct BoundInputs {
  double l = 0;
  double r = 0;
  double c = 1;
  double a = 1;
  double d = 0;
  double p = 0;
  double epsilon = 0.1;

  double k() const noexcept { return r == 0 ? 0.0 : l / r; }
  double ck() const noexcept { return c * k(); }
  /// gamma with p = gamma * log(l) / l.
  double gamma() const noexcept { return l < 2 ? 0.0 : p * l / std::log(l); }
};

namespace detail {

/// log(e^x - 1) for x > 0 without overflow.
inline double log_expm1(double x) {
  return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
}

}  // namespace detail

/// 1 - e^{-x + (a-1)/r} * sum_{i<a} x^i, the per-vertex fraction of the
/// sampling lower bound. The finite sum is the continuous extension of
/// (x^a - 1)/(x - 1) through x = 1. Pass r = infinity for the r -> inf limit.
inline double sampling_bound_fraction(double ck, std::size_t a,
                                      double r = std::numeric_limits<double>::infinity()) {
  if (ck < 0) throw ConfigError("ck must be non-negative");
  if (a < 1) throw ConfigError("a must be >= 1");
  const double shift = std::isinf(r) ? 0.0 : (static_cast<double>(a) - 1.0) / r;
  double miss = 0.0;
  if (ck == 0.0) {
    miss = std::exp(shift);
  } else {
    const double log_ck = std::log(ck);
    for (std::size_t i = 0; i < a; ++i) miss += std::exp(-ck + shift + static_cast<double>(i) * log_ck);
  }
  return 1.0 - miss;
}

/// Expected-coverage lower bound for the sampling solver on the fixed-degree
/// model, clamped to [0, r].
inline double sampling_lower_bound(const BoundInputs& in) {
  if (in.r <= 0) return 0.0;
  const double frac = sampling_bound_fraction(in.ck(), static_cast<std::size_t>(in.a), in.r);
  return std::clamp(in.r * frac, 0.0, in.r);
}

/// Expected approximation ratio of sampling for a = 1:
/// (1 - e^{-ck}) / min(ck, 1). Never below 1 - 1/e.
inline double sampling_approx_ratio(double ck) {
  if (!(ck > 0)) throw ConfigError("ck must be positive");
  return -std::expm1(-ck) / std::min(ck, 1.0);
}

/// Smallest ck at which the r -> inf sampling bound fraction reaches `target`.
/// Scans upward for a bracket, then bisects to |f| < 1e-10.
inline double required_ck(std::size_t a, double target) {
  if (a < 1) throw ConfigError("a must be >= 1");
  if (!(target > 0.0 && target < 1.0)) throw ConfigError("target must lie in (0, 1)");
  const auto f = [&](double x) { return sampling_bound_fraction(x, a) - target; };
  constexpr double kStep = 0.25;
  constexpr double kLimit = 1000.0;
  double lo = 0.0;
  double hi = -1.0;
  for (double x = kStep; x <= kLimit; x += kStep) {
    if (f(x) >= 0.0) {
      hi = x;
      break;
    }
    lo = x;
  }
  if (hi < 0) throw ConfigError("target " + std::to_string(target) + " unreachable below ck=1000");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::fabs(fm) < 1e-10) return mid;
    (fm < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Natural log of the subtracted term of the greedy bound on G_{l,r,p}:
///   a (lp)^{a-1} / (1-p)^a * sum_{i=0}^{r-1} (1-p)^{l - i a / c}
/// The geometric sum is evaluated in closed form. -inf when p = 1 or r = 0.
inline double greedy_bound_log_deficit(const BoundInputs& in) {
  if (in.p < 0 || in.p > 1) throw ConfigError("p must lie in [0, 1]");
  if (in.l * in.p < 1.0) throw ConfigError("greedy bound requires l*p >= 1");
  if (in.c <= 0 || in.a < 1) throw ConfigError("greedy bound requires c > 0 and a >= 1");
  if (in.p == 1.0 || in.r <= 0) return -std::numeric_limits<double>::infinity();
  const double log_q = std::log1p(-in.p);
  const double s = -(in.a / in.c) * log_q;  // log of the geometric ratio, > 0
  double log_sum = in.l * log_q;
  if (s * in.r < 1e-12)
    log_sum += std::log(in.r);
  else
    log_sum += detail::log_expm1(in.r * s) - detail::log_expm1(s);
  return std::log(in.a) + (in.a - 1.0) * std::log(in.l * in.p) - in.a * log_q + log_sum;
}

/// The subtracted term itself; may underflow to 0 or overflow to +inf.
inline double greedy_bound_deficit(const BoundInputs& in) { return std::exp(greedy_bound_log_deficit(in)); }

/// Expected-coverage lower bound for greedy on G_{l,r,p}, clamped to [0, r].
inline double greedy_expected_bound(const BoundInputs& in) {
  if (in.p == 1.0) {
    if (in.l * in.p < 1.0) throw ConfigError("greedy bound requires l*p >= 1");
    return std::max(in.r, 0.0);
  }
  const double deficit = greedy_bound_deficit(in);
  return std::clamp(in.r - deficit, 0.0, std::max(in.r, 0.0));
}

struct ConcentrationBound {
  double threshold = 0;       // r (1 - 2 e^{-ck})
  double prob_bound = 0;      // (e/4)^{r (1 - e^{-ck})}
  double log_prob_bound = 0;  // natural log of prob_bound; survives underflow
};

/// Tail statement for a = 1: coverage at most `threshold` with probability at
/// most `prob_bound`. The expression is evaluated as printed; the direction of
/// the inequality is not asserted here.
inline ConcentrationBound concentration_bound(const BoundInputs& in) {
  const double ck = in.ck();
  if (!(ck > 0)) throw ConfigError("ck must be positive");
  ConcentrationBound out;
  out.threshold = in.r * (1.0 - 2.0 * std::exp(-ck));
  out.log_prob_bound = in.r * -std::expm1(-ck) * (1.0 - 2.0 * std::numbers::ln2);
  out.prob_bound = std::exp(out.log_prob_bound);
  return out;
}

/// min(floor(l c / a), #{v : v has >= a distinct candidate neighbors}).
inline std::size_t upper_bound_estimate(const BipartiteGraph& g, const ProblemParams& params) {
  params.check();
  const std::size_t budget = g.left_size() * params.c / params.a;
  std::size_t eligible = 0;
  for (std::size_t v = 0; v < g.right_size(); ++v)
    if (g.distinct_right_degree(static_cast<Vertex>(v)) >= params.a) ++eligible;
  return std::min(budget, eligible);
}

}  // namespace recsub
