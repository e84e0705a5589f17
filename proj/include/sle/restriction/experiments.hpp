#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sle/loewner/monitor.hpp"
#include "sle/restriction/hull.hpp"

namespace sle {

/// Shared Monte Carlo settings. Path i always uses stream i of the master
/// seed, so results do not depend on the worker count and a longer run
/// extends a shorter one.
struct McConfig {
  double kappa = 8.0 / 3.0;
  int n_steps = 20000;
  std::uint64_t seed = 314159;
  int n_paths = 10000;
  /// 0: hardware concurrency.
  int threads = 0;
  /// Capacity horizon; each experiment picks its own default when empty.
  std::optional<double> capacity;
  MonitorOptions monitor;

  /// Throws std::invalid_argument on non-positive counts or kappa < 0.
  void validate() const;
  SleParams sle(double default_capacity) const;
};

struct Estimate {
  double estimate = 0;
  double std_error = 0;
  long n_paths = 0;
  long hits = 0;
};

/// Binomial proportion and standard error.
Estimate proportion(long successes, long n);

/// Fraction of paths whose curve never meets the hull.
Estimate mc_avoid_probability(const McConfig& cfg, const HullSpec& h);

/// Per-path lowest hit of the vertical slit [x, x + i eps_max sqrt(2)] as a
/// fraction of its height (> 1 when missed). A slit of height eps sqrt(2) is
/// hit iff the value is <= eps / eps_max.
std::vector<double> nested_slit_hits(const McConfig& cfg, double x, double eps_max);

struct B1Row {
  double eps = 0;
  Estimate hit;
  /// hit / eps^2 and its standard error.
  double scaled = 0;
  double scaled_se = 0;
  double exact_scaled = 0;
  double limit = 0;
};

/// eps^-2 P[hit slit of height eps sqrt(2) at x] for each eps, next to the
/// exact finite-eps value and the limit alpha / x^2. Requires kappa = 8/3.
std::vector<B1Row> b1_limit_check(const McConfig& cfg, const RestrictionParams& rp, double x,
                                  const std::vector<double>& eps_grid);

struct ExponentFit {
  double s_hat = 0;
  double std_error = 0;
  std::vector<double> eps;
  std::vector<Estimate> cells;
  /// Cells left out of the fit (zero hits).
  std::vector<std::string> warnings;
  int bootstrap_samples = 0;
};

/// OLS slope of log P(hit) on log eps over the grid, with a bootstrap
/// (resampling paths, fixed seed) standard error. Requires kappa < 8 and at
/// least two cells with hits; throws std::runtime_error otherwise.
ExponentFit boundary_exponent_fit(const McConfig& cfg, double x, const std::vector<double>& eps_grid,
                                  int bootstrap_samples = 200);

struct MartingaleResult {
  double x = 0;
  double capacity = 0;
  double mean = 0;
  double std_error = 0;
  /// alpha / x^2
  double target = 0;
  long n_paths = 0;
  long swallowed = 0;
};

/// Mean of |g_T'(x)|^2 alpha / (g_T(x) - W_T)^2 over paths (swallowed
/// paths contribute 0). Default T = 0.01 and x = 10 sqrt(T): the
/// truncated quantity loses mass to swallowing once T / x^2 is not small.
MartingaleResult martingale_check(const McConfig& cfg, const RestrictionParams& rp,
                                  std::optional<double> x = std::nullopt);

struct ConcordanceResult {
  long n_paths = 0;
  long agree = 0;
  long monitor_hits = 0;
  long trace_hits = 0;
  double fraction() const { return n_paths ? static_cast<double>(agree) / static_cast<double>(n_paths) : 1.0; }
};

/// Flow monitoring against the trace-polyline detector on the same steps.
/// Tolerance: delta_hit times L / sqrt(2) for a slit, times r for a disk.
ConcordanceResult detector_concordance(const McConfig& cfg, const HullSpec& h);

}  // namespace sle
