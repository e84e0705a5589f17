// Prints one PASS/FAIL line per acceptance criterion; exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "oracle/jet.hpp"
#include "sle/cli/commands.hpp"
#include "sle/restriction/experiments.hpp"
#include "sle/ward/checks.hpp"
#include "support/random_ratfun.hpp"

using namespace sle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const RatFun a = var(Var::alpha());
const RatFun k = var(Var::kappa());
const BigRational kKappa = make_rational(8, 3);
const BigRational kAlpha = make_rational(5, 8);

std::array<BigRational, kMaxVars> point(const BigRational& alpha, const std::vector<BigRational>& xs) {
  std::array<BigRational, kMaxVars> p;
  p[static_cast<std::size_t>(Var::alpha().id)] = alpha;
  p[static_cast<std::size_t>(Var::kappa().id)] = kKappa;
  for (std::size_t j = 0; j < xs.size(); ++j) p[static_cast<std::size_t>(Var::x(static_cast<int>(j) + 1).id)] = xs[j];
  return p;
}

Outcome constants() {
  auto t0 = Clock::now();
  DerivedConstants dc = derive_constants();
  double t = seconds_since(t0);
  bool ok = dc.kappa == kKappa && dc.alpha == kAlpha && t < 10;
  return {ok, fmt("kappa=%s alpha=%s in %.2f s", to_string(dc.kappa).c_str(), to_string(dc.alpha).c_str(), t)};
}

Outcome evolution() {
  auto t0 = Clock::now();
  auto fam = build_tower(RatFun(kAlpha), 4);
  auto d = evolution_defect(fam, RatFun(kKappa), 2);
  bool ok = true;
  for (int n = 1; n <= 4; ++n) ok = ok && d[static_cast<std::size_t>(n)].is_zero();
  double t = seconds_since(t0);
  return {ok && t < 300, fmt("levels 1-4 exact zero: %s, %.2f s", ok ? "yes" : "no", t)};
}

Outcome modes() {
  auto fam = build_tower(RatFun(kAlpha), 4);
  auto records = mode_expand_check(fam, 4);
  long bad = 0;
  for (const auto& r : records) bad += !r.exact_zero();
  return {bad == 0 && records.size() == 36, fmt("%zu checks (n<=3, N<=4), %ld nonzero", records.size(), bad)};
}

Outcome commutators() {
  testing_support::RatFunGenerator gen(20240611, 3);
  std::vector<RatFun> fs;
  for (int i = 0; i < 24; ++i) fs.push_back(gen.ratfun());
  auto records = commutator_sweep(fs, Arity(3), -3, 3);
  long bad = 0;
  for (const auto& r : records) bad += !r.exact_zero();
  return {bad == 0, fmt("%zu functions x 49 mode pairs, %ld nonzero", fs.size(), bad)};
}

Outcome degeneracy() {
  auto fam = build_tower(RatFun(kAlpha), 4);
  bool zero = all_exact(degeneracy_check(fam, RatFun(kKappa)));
  DerivedConstants dc = derive_constants();
  bool d1 = dc.level1_defect == a * (RatFun(3) * k - RatFun(8)) / x(1).pow(4);
  bool d2 = dc.level2_defect ==
            RatFun(make_rational(4, 3)) * a * (RatFun(8) * a - RatFun(5)) / (x(1).pow(3) * x(2).pow(3));
  // brute-force jet expansion of the same operator at sample points
  bool oracle_ok = true;
  for (int i = 0; i < 3; ++i) {
    BigRational alpha = make_rational(2 * i + 1, 9);
    BigRational kappa = make_rational(i + 2, 3);
    std::vector<BigRational> xs{make_rational(3 + i, 2), make_rational(11 + 2 * i, 3)};
    auto p1 = point(alpha, {xs[0]});
    p1[static_cast<std::size_t>(Var::kappa().id)] = kappa;
    oracle_ok = oracle_ok && dc.level1_defect.evaluate(p1) == oracle::evolution_value(alpha, kappa, 2, {xs[0]});
    oracle_ok = oracle_ok && dc.level2_defect.evaluate(point(alpha, xs)) == oracle::evolution_value(alpha, kKappa, 2, xs);
  }
  return {zero && d1 && d2 && oracle_ok,
          fmt("degeneracy n<=4 zero: %d, level-1 defect %s: %d, level-2 defect %s: %d, oracle: %d", zero,
              dc.level1_defect.to_string().c_str(), d1, dc.level2_defect.to_string().c_str(), d2, oracle_ok)};
}

Outcome lowering() {
  auto fam = build_tower(RatFun(kAlpha), 4);
  bool ok = true;
  int words = 0;
  for (int m1 : {-1, -2}) {
    ok = ok && all_exact(lowering_compose(fam, {ModeIndex(m1)}).checks);
    ++words;
    for (int m2 : {-1, -2}) {
      ok = ok && all_exact(lowering_compose(fam, {ModeIndex(m1), ModeIndex(m2)}).checks);
      ++words;
    }
  }
  auto s1 = stability_check(fam, ModeIndex(1), {ModeIndex(-1)});
  auto s2 = stability_check(fam, ModeIndex(2), {ModeIndex(-2)});
  bool c1 = all_exact(s1.checks) && s1.extracted.levels[0] == RatFun(2 * kAlpha);
  bool c2 = all_exact(s2.checks) && s2.extracted.levels[0] == RatFun(4 * kAlpha);
  return {ok && c1 && c2, fmt("%d lowering words exact: %d, [l1,l-1]B=%s, [l2,l-2]B=%s", words, ok,
                              s1.extracted.levels[0].to_string().c_str(), s2.extracted.levels[0].to_string().c_str())};
}

McConfig mc(int paths) {
  McConfig cfg;
  cfg.n_paths = paths;
  cfg.n_steps = 20000;
  return cfg;
}

Outcome restriction() {
  std::string detail;
  bool ok = true;
  for (auto [text, target] : {std::pair{"slit:1:0.5", 0.93264}, std::pair{"disk:2:1", 0.83538}}) {
    auto t0 = Clock::now();
    auto e = mc_avoid_probability(mc(10000), HullSpec::parse(text));
    bool pass = std::abs(e.estimate - target) <= 3 * e.std_error + 0.02;
    ok = ok && pass;
    detail += fmt("%s %.5f+-%.5f vs %.5f (%.0f s); ", text, e.estimate, e.std_error, target, seconds_since(t0));
  }
  return {ok, detail};
}

Outcome exponent() {
  const std::vector<double> grid{0.05, 0.1, 0.2, 0.4};
  std::string detail;
  bool ok = true;
  for (auto [kappa, paths, rel] : {std::tuple{8.0 / 3.0, 20000, 0.15}, std::tuple{6.0, 10000, 0.20}}) {
    McConfig cfg = mc(paths);
    cfg.kappa = kappa;
    auto t0 = Clock::now();
    auto fit = boundary_exponent_fit(cfg, 1.0, grid);
    double s = 8 / kappa - 1;
    bool pass = std::abs(fit.s_hat - s) <= rel * s;
    ok = ok && pass;
    detail += fmt("kappa=%.4g s_hat %.3f+-%.3f vs %.4g (%.0f s); ", kappa, fit.s_hat, fit.std_error, s,
                  seconds_since(t0));
  }
  return {ok, detail};
}

Outcome martingale() {
  auto m = martingale_check(mc(10000), {});
  bool ok = std::abs(m.mean - m.target) <= 3 * m.std_error;
  return {ok, fmt("x=%.3g T=%.3g mean %.5f+-%.5f vs %.5f", m.x, m.capacity, m.mean, m.std_error, m.target)};
}

Outcome determinism() {
  std::vector<cli::RunConfig> configs;
  for (const char* c : {"derive-constants", "verify", "simulate", "restriction", "exponent", "b1-limit"}) {
    cli::RunConfig cfg;
    cfg.command = c;
    cfg.n_paths = 200;
    cfg.emit_defects = true;
    configs.push_back(cfg);
  }
  auto disk = configs[3];
  disk.hull = "disk:2:1";
  configs.push_back(disk);
  auto kappa6 = configs[4];
  kappa6.kappa = "6";
  configs.push_back(kappa6);
  int same = 0;
  for (auto cfg : configs) {
    cfg.threads = 1;
    auto first = cli::run_command(cfg);
    auto second = cli::run_command(cfg);
    cfg.threads = 4;
    auto parallel = cli::run_command(cfg);
    same += first.report == second.report && first.report == parallel.report && first.exit_code != 2;
  }
  return {same == static_cast<int>(configs.size()),
          fmt("%d/%zu command configurations byte-identical across reruns and 1 vs 4 workers", same, configs.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"constant derivation", constants},  {"evolution consistency", evolution}, {"mode structure", modes},
      {"commutation", commutators},        {"level-2 degeneracy", degeneracy},  {"lowering and stability", lowering},
      {"restriction formula", restriction}, {"boundary exponent", exponent},      {"martingale", martingale},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
