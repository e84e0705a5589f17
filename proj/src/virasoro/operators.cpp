#include "sle/virasoro/operators.hpp"

#include <stdexcept>

namespace sle {

namespace {

void check_arity(const RatFun& f, int arity) {
  if (arity < 0 || arity > kMaxXIndex) throw std::invalid_argument("operator arity out of range");
  for (Var v : f.variables()) {
    if (v.is_x() && v.x_index() > arity) {
      throw std::invalid_argument("function depends on " + v.name() + " beyond the operator arity");
    }
  }
}

}  // namespace

WeightedVectorField::WeightedVectorField(ModeIndex mode, Arity arity, BigRational weight)
    : mode_(mode), weight_(std::move(weight)), arity_(arity.value) {}

RatFun WeightedVectorField::operator()(const RatFun& f) const {
  check_arity(f, arity_);
  if (f.is_zero()) return f;
  const int m = mode_.value;
  RatFun out;
  BigRational mult = weight_ * (m + 1);
  for (int j = 1; j <= arity_; ++j) {
    RatFun xj = x(j);
    RatFun df = f.derivative(Var::x(j));
    if (!df.is_zero()) out -= xj.pow(m + 1) * df;
    if (mult != 0) out -= RatFun(mult) * xj.pow(m) * f;
  }
  return out;
}

RatFun apply_L(ModeIndex m, const RatFun& f, Arity arity, const BigRational& weight) {
  return WeightedVectorField(m, arity, weight)(f);
}

RatFun commutator_defect(ModeIndex m, ModeIndex n, const RatFun& f, Arity arity, const BigRational& weight) {
  RatFun mn = apply_L(m, apply_L(n, f, arity, weight), arity, weight);
  RatFun nm = apply_L(n, apply_L(m, f, arity, weight), arity, weight);
  RatFun sum = apply_L(m + n, f, arity, weight);
  return mn - nm - RatFun(m.value - n.value) * sum;
}

RatFun degeneracy_apply(const RatFun& kappa, const RatFun& f, Arity arity) {
  RatFun l1 = apply_L(ModeIndex(-1), f, arity);
  RatFun l11 = apply_L(ModeIndex(-1), l1, arity);
  RatFun l2 = apply_L(ModeIndex(-2), f, arity);
  return kappa * RatFun(BigRational(1, 2)) * l11 - 2 * l2;
}

}  // namespace sle
