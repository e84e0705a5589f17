#include "sle/restriction/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "sle/loewner/parallel.hpp"

namespace sle {

void McConfig::validate() const {
  if (!(kappa >= 0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be >= 0");
  if (n_steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (n_paths < 1) throw std::invalid_argument("paths must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  if (capacity && !(*capacity > 0)) throw std::invalid_argument("capacity must be positive");
}

SleParams McConfig::sle(double default_capacity) const {
  validate();
  SleParams p{kappa, capacity.value_or(default_capacity), n_steps, seed};
  p.validate();
  return p;
}

Estimate proportion(long successes, long n) {
  Estimate e;
  e.n_paths = n;
  e.hits = successes;
  if (n <= 0) return e;
  double p = static_cast<double>(successes) / static_cast<double>(n);
  e.estimate = p;
  e.std_error = std::sqrt(p * (1 - p) / static_cast<double>(n));
  return e;
}

Estimate mc_avoid_probability(const McConfig& cfg, const HullSpec& h) {
  const SleParams p = cfg.sle(h.horizon(cfg.kappa));
  const HullBoundary boundary = h.boundary();
  auto hit = parallel_map<char>(static_cast<std::size_t>(cfg.n_paths), cfg.threads, [&](std::size_t i) -> char {
    return monitor_hull(sample_driving(p, i), boundary, cfg.monitor).hit;
  });
  long hits = std::count(hit.begin(), hit.end(), char{1});
  Estimate e = proportion(cfg.n_paths - hits, cfg.n_paths);
  e.hits = hits;
  return e;
}

std::vector<double> nested_slit_hits(const McConfig& cfg, double x, double eps_max) {
  const HullSpec slit = HullSpec::vertical_slit(x, eps_max * std::sqrt(2.0));
  const SleParams p = cfg.sle(slit.horizon(cfg.kappa));
  const HullBoundary boundary = slit.boundary();
  MonitorOptions opt = cfg.monitor;
  opt.track_lowest = true;
  return parallel_map<double>(static_cast<std::size_t>(cfg.n_paths), cfg.threads, [&](std::size_t i) {
    HitRecord r = monitor_hull(sample_driving(p, i), boundary, opt);
    return r.hit ? r.lowest : std::numeric_limits<double>::infinity();
  });
}

namespace {

void check_grid(const std::vector<double>& eps_grid) {
  if (eps_grid.empty()) throw std::invalid_argument("eps grid is empty");
  for (double e : eps_grid) {
    if (!(e > 0) || !std::isfinite(e)) throw std::invalid_argument("eps values must be positive");
  }
}

std::vector<long> cell_counts(const std::vector<double>& lowest, const std::vector<double>& thresholds) {
  std::vector<long> out(thresholds.size(), 0);
  for (double v : lowest) {
    for (std::size_t j = 0; j < thresholds.size(); ++j) out[j] += v <= thresholds[j];
  }
  return out;
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

}  // namespace

std::vector<B1Row> b1_limit_check(const McConfig& cfg, const RestrictionParams& rp, double x,
                                  const std::vector<double>& eps_grid) {
  rp.validate();
  check_grid(eps_grid);
  if (std::abs(cfg.kappa - 8.0 / 3.0) > 1e-12) throw std::invalid_argument("b1-limit requires kappa = 8/3");
  if (!(x > 0)) throw std::invalid_argument("b1-limit requires x > 0");
  const double eps_max = *std::max_element(eps_grid.begin(), eps_grid.end());
  auto lowest = nested_slit_hits(cfg, x, eps_max);
  std::vector<double> thresholds;
  for (double e : eps_grid) thresholds.push_back(e / eps_max);
  auto counts = cell_counts(lowest, thresholds);

  std::vector<B1Row> rows;
  for (std::size_t j = 0; j < eps_grid.size(); ++j) {
    B1Row r;
    r.eps = eps_grid[j];
    r.hit = proportion(counts[j], cfg.n_paths);
    r.scaled = r.hit.estimate / (r.eps * r.eps);
    r.scaled_se = r.hit.std_error / (r.eps * r.eps);
    r.exact_scaled = exact_scaled_slit_hit(x, r.eps, rp.alpha);
    r.limit = rp.alpha / (x * x);
    rows.push_back(r);
  }
  return rows;
}

ExponentFit boundary_exponent_fit(const McConfig& cfg, double x, const std::vector<double>& eps_grid,
                                  int bootstrap_samples) {
  check_grid(eps_grid);
  if (!(cfg.kappa < 8)) throw std::invalid_argument("exponent fit requires kappa < 8");
  if (!(x > 0)) throw std::invalid_argument("exponent fit requires x > 0");
  const double eps_max = *std::max_element(eps_grid.begin(), eps_grid.end());
  auto lowest = nested_slit_hits(cfg, x, eps_max);

  ExponentFit fit;
  fit.eps = eps_grid;
  std::vector<double> thresholds;
  for (double e : eps_grid) thresholds.push_back(e / eps_max);
  auto counts = cell_counts(lowest, thresholds);

  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < eps_grid.size(); ++j) {
    fit.cells.push_back(proportion(counts[j], cfg.n_paths));
    if (counts[j] == 0) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "eps=%g has no hits; excluded from the fit", eps_grid[j]);
      fit.warnings.emplace_back(buf);
    } else {
      used.push_back(j);
    }
  }
  if (used.size() < 2) throw std::runtime_error("exponent fit needs at least two eps values with hits");

  auto slope_of = [&](const std::vector<long>& c) {
    std::vector<double> xs, ys;
    for (auto j : used) {
      xs.push_back(std::log(eps_grid[j]));
      ys.push_back(std::log(static_cast<double>(c[j]) / cfg.n_paths));
    }
    return ols_slope(xs, ys);
  };
  fit.s_hat = slope_of(counts);

  // resample paths; a resample that empties a fitted cell is skipped
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), 0x626f6f74u};
  std::mt19937_64 engine(seq);
  std::uniform_int_distribution<std::size_t> pick(0, lowest.size() - 1);
  std::vector<double> slopes;
  std::vector<double> sample(lowest.size());
  for (int b = 0; b < bootstrap_samples; ++b) {
    for (auto& v : sample) v = lowest[pick(engine)];
    auto c = cell_counts(sample, thresholds);
    if (std::any_of(used.begin(), used.end(), [&](std::size_t j) { return c[j] == 0; })) continue;
    slopes.push_back(slope_of(c));
  }
  fit.bootstrap_samples = static_cast<int>(slopes.size());
  if (slopes.size() > 1) {
    double mean = 0;
    for (double s : slopes) mean += s;
    mean /= static_cast<double>(slopes.size());
    double var = 0;
    for (double s : slopes) var += (s - mean) * (s - mean);
    fit.std_error = std::sqrt(var / static_cast<double>(slopes.size() - 1));
  }
  return fit;
}

MartingaleResult martingale_check(const McConfig& cfg, const RestrictionParams& rp, std::optional<double> x) {
  rp.validate();
  const SleParams p = cfg.sle(0.01);
  MartingaleResult out;
  out.capacity = p.capacity;
  out.x = x.value_or(10 * std::sqrt(p.capacity));
  if (out.x == 0) throw std::invalid_argument("martingale check needs x != 0");
  out.target = rp.alpha / (out.x * out.x);
  out.n_paths = cfg.n_paths;

  struct Sample {
    double value;
    bool swallowed;
  };
  auto samples = parallel_map<Sample>(static_cast<std::size_t>(cfg.n_paths), cfg.threads, [&](std::size_t i) {
    DrivingPath d = sample_driving(p, i);
    FlowState s = flow_point(d, Complex(out.x, 0));
    if (s.swallowed_at) return Sample{0.0, true};
    double gap = s.z.real() - d.final_value();
    return Sample{std::norm(s.derivative) * rp.alpha / (gap * gap), false};
  });
  double sum = 0, sum2 = 0;
  for (const auto& s : samples) {
    sum += s.value;
    sum2 += s.value * s.value;
    out.swallowed += s.swallowed;
  }
  const double n = static_cast<double>(cfg.n_paths);
  out.mean = sum / n;
  double var = n > 1 ? std::max(0.0, (sum2 - n * out.mean * out.mean) / (n - 1)) : 0.0;
  out.std_error = std::sqrt(var / n);
  return out;
}

ConcordanceResult detector_concordance(const McConfig& cfg, const HullSpec& h) {
  const SleParams p = cfg.sle(h.horizon(cfg.kappa));
  const HullBoundary boundary = h.boundary();
  MonitorOptions opt = cfg.monitor;
  opt.record_steps = true;
  // eps of an eps-slit, or the radius
  const double scale = h.kind() == HullSpec::Kind::VerticalSlit ? h.size() / std::sqrt(2.0) : h.size();
  const double tolerance = opt.delta_hit * scale;
  struct Pair {
    bool monitor;
    bool trace;
  };
  auto pairs = parallel_map<Pair>(static_cast<std::size_t>(cfg.n_paths), cfg.threads, [&](std::size_t i) {
    HitRecord r = monitor_hull(sample_driving(p, i), boundary, opt);
    TraceHitRecord t = trace_hit(r.steps, cfg.kappa, boundary, tolerance);
    return Pair{r.hit, t.hit};
  });
  ConcordanceResult out;
  out.n_paths = cfg.n_paths;
  for (const auto& pr : pairs) {
    out.agree += pr.monitor == pr.trace;
    out.monitor_hits += pr.monitor;
    out.trace_hits += pr.trace;
  }
  return out;
}

}  // namespace sle
