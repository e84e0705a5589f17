#include "sle/ward/family.hpp"

#include <stdexcept>

namespace sle {

CorrelationFamily seed_family(const RatFun& alpha) {
  CorrelationFamily fam;
  fam.alpha = alpha;
  fam.levels = {RatFun(1), alpha / x(1).pow(2)};
  fam.provenance = {"seed", "seed"};
  fam.degenerate = alpha.is_zero();
  return fam;
}

CorrelationFamily ward_extend(const CorrelationFamily& fam) {
  if (fam.levels.empty()) throw std::invalid_argument("ward_extend: empty family");
  const int n = fam.height();
  if (n + 1 > kMaxXIndex) throw std::length_error("ward_extend: tower exceeds the variable space");

  const RatFun shifted = fam.levels.back().permuted(x_shift(1));
  const RatFun fresh = x(1);
  const RatFun inv_fresh = 1 / fresh;
  RatFun next = fam.alpha * inv_fresh.pow(2) * shifted;
  for (int j = 2; j <= n + 1; ++j) {
    RatFun inv_gap = 1 / (x(j) - fresh);
    RatFun d = shifted.derivative(Var::x(j));
    next -= (inv_gap + inv_fresh) * d - 2 * inv_gap.pow(2) * shifted;
  }

  CorrelationFamily out = fam;
  out.levels.push_back(std::move(next));
  out.provenance.emplace_back("ward");
  return out;
}

CorrelationFamily build_tower(const RatFun& alpha, int height) {
  if (height < 1) throw std::invalid_argument("tower height must be at least 1");
  CorrelationFamily fam = seed_family(alpha);
  while (fam.height() < height) fam = ward_extend(fam);
  return fam;
}

}  // namespace sle
