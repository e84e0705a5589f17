#pragma once

#include <map>

#include "sle/exact/ratfun.hpp"

namespace sle {

/// Truncated Laurent expansion of a rational function in one variable around 0.
/// Coefficients are rational functions of the remaining variables; only
/// nonzero ones are stored.
struct LaurentSeries {
  Var var;
  int min_order = 0;
  int max_order = 0;
  std::map<int, RatFun> coeffs;

  /// Zero for orders without a stored coefficient; throws std::out_of_range
  /// outside [min_order, max_order].
  RatFun coefficient(int order) const;
  /// Lowest order with a nonzero coefficient, if any in range.
  std::optional<int> leading_order() const;
  /// Sum of coeff(k) * var^k over the stored range.
  RatFun truncation() const;
};

/// Expands f in v around v = 0 for orders k_min..k_max.
/// Throws std::domain_error if f has no finite-order pole at v = 0.
LaurentSeries laurent_expand(const RatFun& f, Var v, int k_min, int k_max);

}  // namespace sle
