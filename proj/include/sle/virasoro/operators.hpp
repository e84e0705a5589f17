#pragma once

#include "sle/exact/ratfun.hpp"

namespace sle {

/// Integer mode label of a Virasoro-type operator.
struct ModeIndex {
  int value = 0;

  constexpr ModeIndex() = default;
  constexpr explicit ModeIndex(int m) : value(m) {}

  friend constexpr ModeIndex operator+(ModeIndex a, ModeIndex b) { return ModeIndex(a.value + b.value); }
  friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
  friend constexpr auto operator<=>(ModeIndex, ModeIndex) = default;
};

/// Number of x-variables an operator acts on (x1..x_n).
struct Arity {
  int value = 0;
  constexpr explicit Arity(int n) : value(n) {}
};

/// First-order operator  f -> sum_j [ -x_j^{m+1} d_j f - w (m+1) x_j^m f ].
class WeightedVectorField {
 public:
  WeightedVectorField(ModeIndex mode, Arity arity, BigRational weight = 2);

  ModeIndex mode() const { return mode_; }
  const BigRational& weight() const { return weight_; }
  int arity() const { return arity_; }

  RatFun operator()(const RatFun& f) const;

 private:
  ModeIndex mode_;
  BigRational weight_;
  int arity_;
};

/// Throws std::invalid_argument if f depends on x_j with j > arity.
RatFun apply_L(ModeIndex m, const RatFun& f, Arity arity, const BigRational& weight = 2);

/// L_m L_n f - L_n L_m f - (m - n) L_{m+n} f; identically zero.
RatFun commutator_defect(ModeIndex m, ModeIndex n, const RatFun& f, Arity arity, const BigRational& weight = 2);

/// (kappa/2) L_{-1}^2 f - 2 L_{-2} f at weight 2; kappa may be the symbol k.
RatFun degeneracy_apply(const RatFun& kappa, const RatFun& f, Arity arity);

}  // namespace sle
