#include "sle/ward/checks.hpp"

#include <map>
#include <stdexcept>

#include "sle/exact/gcd.hpp"
#include "sle/exact/laurent.hpp"

namespace sle {

namespace {

RatFun evolution_at_level(const RatFun& b, int n, const RatFun& kappa, const BigRational& s) {
  if (b.is_zero() || n == 0) return RatFun{};
  RatFun potential;
  RatFun drift;
  RatFun grad;
  for (int j = 1; j <= n; ++j) {
    RatFun inv = 1 / x(j);
    RatFun d = b.derivative(Var::x(j));
    potential += inv.pow(2);
    drift += 2 * inv * d;
    grad += d;
  }
  RatFun lap;
  for (int j = 1; j <= n; ++j) lap += grad.derivative(Var::x(j));
  return RatFun(BigRational(-2 * s)) * potential * b + drift + kappa * RatFun(BigRational(1, 2)) * lap;
}

// gcd over the x-monomials of the numerator's coefficients in (a, k).
IntPoly parameter_constraint(const RatFun& defect) {
  std::map<std::string, IntPoly> by_x;
  std::map<std::string, Monomial> keys;
  for (const auto& t : defect.numerator().terms()) {
    Monomial params;
    Monomial xs = t.mono;
    for (Var v : {Var::alpha(), Var::kappa()}) {
      params.set_exponent(v, t.mono.exponent(v));
      xs.set_exponent(v, 0);
    }
    by_x[xs.to_string()] += IntPoly::monomial(params, t.coeff);
  }
  IntPoly g;
  for (const auto& [key, poly] : by_x) g = gcd(g, poly);
  return g;
}

std::vector<BigRational> positive_roots(const IntPoly& p, Var v) {
  std::vector<BigRational> out;
  for (const auto& r : rational_roots(p, v)) {
    if (r > 0) out.push_back(r);
  }
  return out;
}

bool only_in(const IntPoly& p, Var v) { return (p.support() & ~(1u << v.id)) == 0; }

}  // namespace

bool all_exact(const std::vector<CheckRecord>& records) {
  for (const auto& r : records) {
    if (!r.exact_zero()) return false;
  }
  return true;
}

std::vector<RatFun> evolution_defect(const CorrelationFamily& fam, const RatFun& kappa, const BigRational& s) {
  std::vector<RatFun> out;
  for (int n = 0; n <= fam.height(); ++n) out.push_back(evolution_at_level(fam.level(n), n, kappa, s));
  return out;
}

DerivedConstants derive_constants() {
  const Var a = Var::alpha();
  const Var k = Var::kappa();
  CorrelationFamily fam = build_tower(var(a), 2);
  DerivedConstants out;

  auto symbolic = evolution_defect(fam, var(k), 2);
  out.level1_defect = symbolic[1];
  out.level1_constraint = parameter_constraint(symbolic[1]);
  if (out.level1_constraint.is_zero()) throw std::runtime_error("level-1 constraint is empty");

  // Split off the factor free of k; its roots in a are excluded by a > 0.
  IntPoly a_part = content_in(out.level1_constraint, k);
  IntPoly k_part = *divide_exact(out.level1_constraint, a_part);
  if (!only_in(k_part, k) || k_part.is_constant()) throw std::runtime_error("level-1 constraint does not fix kappa");
  if (!a_part.is_constant()) {
    if (!only_in(a_part, a) || !positive_roots(a_part, a).empty()) {
      throw std::runtime_error("level-1 constraint admits solutions with kappa free");
    }
  }
  auto kappas = positive_roots(k_part, k);
  if (kappas.size() != 1) throw std::runtime_error("no unique positive kappa");
  out.kappa = kappas.front();

  out.level2_defect = evolution_defect(fam, RatFun(out.kappa), 2)[2];
  out.level2_constraint = parameter_constraint(out.level2_defect);
  if (out.level2_constraint.is_zero() || !only_in(out.level2_constraint, a)) {
    throw std::runtime_error("level-2 constraint does not fix alpha");
  }
  auto alphas = positive_roots(out.level2_constraint, a);
  if (alphas.size() != 1) throw std::runtime_error("no unique positive alpha");
  out.alpha = alphas.front();

  CorrelationFamily fixed = build_tower(RatFun(out.alpha), 2);
  auto evo = evolution_defect(fixed, RatFun(out.kappa), 2);
  for (int n = 1; n <= 2; ++n) {
    out.cross_checks.push_back(CheckRecord{n, "evolution", evo[static_cast<std::size_t>(n)]});
  }
  for (auto& r : degeneracy_check(fixed, RatFun(out.kappa))) {
    if (r.level > 0) out.cross_checks.push_back(std::move(r));
  }
  return out;
}

FamilyVector as_vector(const CorrelationFamily& fam) { return FamilyVector{fam.levels}; }

FamilyVector apply_mode(ModeIndex mode, const FamilyVector& w) {
  if (w.length() < 2) throw std::length_error("mode map needs a vector of length at least 2");
  const int order = -mode.value - 2;
  FamilyVector out;
  for (int n = 0; n + 1 < w.length(); ++n) {
    LaurentSeries s = laurent_expand(w.levels[static_cast<std::size_t>(n + 1)], Var::x(1), order, order);
    out.levels.push_back(s.coefficient(order).permuted(x_shift(-1)));
  }
  return out;
}

std::vector<CheckRecord> mode_expand_check(const CorrelationFamily& fam, int n_max) {
  if (n_max < 1) throw std::invalid_argument("mode depth must be positive");
  std::vector<CheckRecord> out;
  for (int n = 0; n < fam.height(); ++n) {
    const RatFun& upper = fam.level(n + 1);
    const RatFun& lower = fam.level(n);
    LaurentSeries s = laurent_expand(upper, Var::x(1), -2 - n_max, n_max - 2);
    auto coeff = [&](int order) { return s.coefficient(order).permuted(x_shift(-1)); };

    // Raising modes annihilate: nothing below order -2. Report the sum of
    // the offending coefficients (zero iff all vanish up to cancellation,
    // which the per-order records below rule out).
    for (int order = -2 - n_max; order < -2; ++order) {
      out.push_back(CheckRecord{n, "annihilate/l" + std::to_string(-order - 2), coeff(order)});
    }
    out.push_back(CheckRecord{n, "weight/l0", coeff(-2) - fam.alpha * lower});
    for (int N = 1; N <= n_max; ++N) {
      RatFun predicted = apply_L(ModeIndex(-N), lower, Arity(n));
      out.push_back(CheckRecord{n, "lowering/l-" + std::to_string(N), coeff(N - 2) - predicted});
    }
  }
  return out;
}

namespace {

RatFun apply_word(const std::vector<ModeIndex>& modes, const RatFun& f, int arity) {
  RatFun out = f;
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) out = apply_L(*it, out, Arity(arity));
  return out;
}

std::string word_name(const std::vector<ModeIndex>& modes) {
  std::string s;
  for (auto m : modes) s += "l" + std::to_string(m.value);
  return s.empty() ? "id" : s;
}

}  // namespace

LoweringResult lowering_compose(const CorrelationFamily& fam, const std::vector<ModeIndex>& modes) {
  for (auto m : modes) {
    if (m.value >= 0) throw std::invalid_argument("lowering_compose takes negative modes only");
  }
  if (static_cast<int>(modes.size()) >= static_cast<int>(fam.levels.size())) {
    throw std::length_error("tower too short for the requested composition");
  }
  LoweringResult out;
  FamilyVector w = as_vector(fam);
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) w = apply_mode(*it, w);
  out.vector = w;
  for (int n = 0; n < w.length(); ++n) {
    RatFun expected = apply_word(modes, fam.level(n), n);
    out.checks.push_back(
        CheckRecord{n, "compose/" + word_name(modes), w.levels[static_cast<std::size_t>(n)] - expected});
  }
  return out;
}

StabilityResult stability_check(const CorrelationFamily& fam, ModeIndex raise, const std::vector<ModeIndex>& modes) {
  if (raise.value <= 0) throw std::invalid_argument("stability_check needs a positive raising mode");
  for (auto m : modes) {
    if (m.value >= 0) throw std::invalid_argument("stability_check takes negative lowering modes");
  }
  if (static_cast<int>(modes.size()) + 1 >= static_cast<int>(fam.levels.size())) {
    throw std::length_error("tower too short for the requested composition");
  }

  StabilityResult out;
  FamilyVector w = as_vector(fam);
  for (auto it = modes.rbegin(); it != modes.rend(); ++it) w = apply_mode(*it, w);
  out.extracted = apply_mode(raise, w);

  // Normal-order the word by commuting non-negative modes to the right.
  std::vector<ModeIndex> word{raise};
  word.insert(word.end(), modes.begin(), modes.end());
  std::vector<std::pair<std::vector<ModeIndex>, RatFun>> pending{{word, RatFun(1)}};
  std::map<std::vector<int>, std::pair<std::vector<ModeIndex>, RatFun>> lowered;
  while (!pending.empty()) {
    auto [wd, c] = std::move(pending.back());
    pending.pop_back();
    int pos = -1;
    for (int i = static_cast<int>(wd.size()) - 1; i >= 0; --i) {
      if (wd[static_cast<std::size_t>(i)].value >= 0) {
        pos = i;
        break;
      }
    }
    if (pos < 0) {
      std::vector<int> key;
      for (auto m : wd) key.push_back(m.value);
      auto [it, fresh] = lowered.try_emplace(key, wd, c);
      if (!fresh) it->second.second += c;
      continue;
    }
    auto p = static_cast<std::size_t>(pos);
    ModeIndex M = wd[p];
    if (p + 1 == wd.size()) {
      if (M.value > 0) continue;  // annihilates B
      wd.pop_back();
      pending.emplace_back(std::move(wd), c * fam.alpha);
      continue;
    }
    ModeIndex N = wd[p + 1];
    std::vector<ModeIndex> swapped = wd;
    std::swap(swapped[p], swapped[p + 1]);
    pending.emplace_back(std::move(swapped), c);
    std::vector<ModeIndex> merged = wd;
    merged[p] = M + N;
    merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(p + 1));
    pending.emplace_back(std::move(merged), c * RatFun(M.value - N.value));
  }

  for (int n = 0; n < out.extracted.length(); ++n) {
    RatFun value;
    for (const auto& [key, entry] : lowered) {
      if (entry.second.is_zero()) continue;
      value += entry.second * apply_word(entry.first, fam.level(n), n);
    }
    out.predicted.levels.push_back(value);
    out.checks.push_back(CheckRecord{n, "stability/l" + std::to_string(raise.value) + "." + word_name(modes),
                                     out.extracted.levels[static_cast<std::size_t>(n)] - value});
  }
  return out;
}

std::vector<CheckRecord> scaling_check(const CorrelationFamily& fam) {
  std::vector<CheckRecord> out;
  for (int n = 0; n <= fam.height(); ++n) {
    out.push_back(CheckRecord{n, "scaling", apply_L(ModeIndex(0), fam.level(n), Arity(n))});
  }
  return out;
}

std::vector<CheckRecord> degeneracy_check(const CorrelationFamily& fam, const RatFun& kappa) {
  std::vector<CheckRecord> out;
  for (int n = 0; n <= fam.height(); ++n) {
    out.push_back(CheckRecord{n, "degeneracy", degeneracy_apply(kappa, fam.level(n), Arity(n))});
  }
  return out;
}

std::vector<CheckRecord> symmetry_check(const CorrelationFamily& fam, int max_level) {
  std::vector<CheckRecord> out;
  for (int n = 2; n <= std::min(max_level, fam.height()); ++n) {
    const RatFun& b = fam.level(n);
    for (int i = 1; i < n; ++i) {
      out.push_back(CheckRecord{n, "symmetry/x" + std::to_string(i) + "<->x" + std::to_string(i + 1),
                                b.permuted(x_swap(i, i + 1)) - b});
    }
  }
  return out;
}

std::vector<CheckRecord> commutator_sweep(const std::vector<RatFun>& functions, Arity arity, int lo, int hi) {
  std::vector<CheckRecord> out;
  for (std::size_t f = 0; f < functions.size(); ++f) {
    for (int m = lo; m <= hi; ++m) {
      for (int n = lo; n <= hi; ++n) {
        out.push_back(CheckRecord{arity.value,
                                  "commutator/f" + std::to_string(f) + "[" + std::to_string(m) + "," +
                                      std::to_string(n) + "]",
                                  commutator_defect(ModeIndex(m), ModeIndex(n), functions[f], arity)});
      }
    }
  }
  return out;
}

}  // namespace sle
