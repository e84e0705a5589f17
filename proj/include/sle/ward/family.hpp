#pragma once

#include <string>
#include <vector>

#include "sle/exact/ratfun.hpp"

namespace sle {

/// Tower (B_0, B_1, ..., B_m) of boundary correlation functions, B_j in x1..xj.
/// alpha is either the symbol a or a rational constant.
struct CorrelationFamily {
  std::vector<RatFun> levels;
  RatFun alpha;
  /// One entry per level: "seed" or "ward".
  std::vector<std::string> provenance;
  bool degenerate = false;

  int height() const { return static_cast<int>(levels.size()) - 1; }
  const RatFun& level(int n) const { return levels.at(static_cast<std::size_t>(n)); }
};

/// (1, alpha/x1^2). alpha == 0 is accepted and flagged degenerate.
CorrelationFamily seed_family(const RatFun& alpha);

/// Appends B_{n+1}(x, x1..xn) = (alpha/x^2) B_n
///   - sum_j [ (1/(x_j - x) + 1/x) d_j - 2/(x_j - x)^2 ] B_n,
/// with the fresh argument x named x1 and old x_j renamed x_{j+1}.
CorrelationFamily ward_extend(const CorrelationFamily& fam);

/// Seeds and extends to the given height (>= 1).
CorrelationFamily build_tower(const RatFun& alpha, int height);

}  // namespace sle
