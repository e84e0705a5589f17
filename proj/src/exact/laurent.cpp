#include "sle/exact/laurent.hpp"

#include <stdexcept>

namespace sle {

RatFun LaurentSeries::coefficient(int order) const {
  if (order < min_order || order > max_order) throw std::out_of_range("Laurent order outside the computed range");
  auto it = coeffs.find(order);
  return it == coeffs.end() ? RatFun{} : it->second;
}

std::optional<int> LaurentSeries::leading_order() const {
  if (coeffs.empty()) return std::nullopt;
  return coeffs.begin()->first;
}

RatFun LaurentSeries::truncation() const {
  RatFun sum;
  RatFun v = RatFun::variable(var);
  for (const auto& [k, c] : coeffs) sum += c * v.pow(k);
  return sum;
}

LaurentSeries laurent_expand(const RatFun& f, Var v, int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("laurent_expand: empty order range");
  LaurentSeries out{v, k_min, k_max, {}};
  if (f.is_zero()) return out;

  // f = N / (c * v^p * Q_dep * Q_ind), Q_dep the v-dependent part coprime to v.
  IntPoly v_poly = IntPoly::variable(v);
  int pole = 0;
  IntPoly q_dep(1);
  RatFun q_ind(1);
  for (const auto& fac : f.denominator_factors()) {
    if (fac.poly == v_poly) {
      pole = fac.exponent;
    } else if (fac.poly.depends_on(v)) {
      q_dep = q_dep * fac.poly.pow(static_cast<unsigned>(fac.exponent));
    } else {
      q_ind *= RatFun(fac.poly).pow(fac.exponent);
    }
  }
  RatFun scale = (q_ind * RatFun(BigRational(f.denominator_constant()))).inverse();

  auto n_coeffs = f.numerator().coefficients_in(v);
  auto q_coeffs = q_dep.coefficients_in(v);
  if (q_coeffs.empty() || q_coeffs.front().is_zero()) {
    throw std::domain_error("laurent_expand: denominator vanishes identically at the expansion point");
  }
  RatFun q0_inv = RatFun(q_coeffs.front()).inverse();

  // Power series g = N / Q_dep by the division recurrence; coefficient k of f
  // is g_{k+p} * scale.
  int top = k_max + pole;
  std::vector<RatFun> g;
  for (int j = 0; j <= top; ++j) {
    RatFun acc = j < static_cast<int>(n_coeffs.size()) ? RatFun(n_coeffs[static_cast<std::size_t>(j)]) : RatFun{};
    for (int i = 1; i <= j && i < static_cast<int>(q_coeffs.size()); ++i) {
      const auto& qi = q_coeffs[static_cast<std::size_t>(i)];
      if (qi.is_zero()) continue;
      acc -= RatFun(qi) * g[static_cast<std::size_t>(j - i)];
    }
    g.push_back(acc * q0_inv);
  }
  for (int k = std::max(k_min, -pole); k <= k_max; ++k) {
    RatFun c = g[static_cast<std::size_t>(k + pole)] * scale;
    if (!c.is_zero()) out.coeffs.emplace(k, std::move(c));
  }
  return out;
}

}  // namespace sle
