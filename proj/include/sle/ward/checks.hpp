#pragma once

#include <string>
#include <vector>

#include "sle/virasoro/operators.hpp"
#include "sle/ward/family.hpp"

namespace sle {

/// Outcome of one exact identity check.
struct CheckRecord {
  int level = 0;
  std::string check;
  RatFun defect;

  bool exact_zero() const { return defect.is_zero(); }
};

bool all_exact(const std::vector<CheckRecord>& records);

/// Per level n: -2s (sum 1/x_j^2) B_n + (sum (2/x_j) d_j) B_n + (kappa/2)(sum d_j)^2 B_n.
std::vector<RatFun> evolution_defect(const CorrelationFamily& fam, const RatFun& kappa, const BigRational& s);

struct DerivedConstants {
  BigRational kappa;
  BigRational alpha;
  /// Level-1 defect with symbolic a and k; level-2 defect at the derived kappa.
  RatFun level1_defect;
  RatFun level2_defect;
  /// Constraint polynomials read off the defect numerators.
  IntPoly level1_constraint;
  IntPoly level2_constraint;
  /// Degeneracy and evolution cross-checks on B_1, B_2 at the solution.
  std::vector<CheckRecord> cross_checks;
};

/// Solves the level-1 and level-2 evolution constraints for (kappa, alpha)
/// with alpha > 0. Throws std::runtime_error if there is no unique positive solution.
DerivedConstants derive_constants();

/// Finite vector (w_0, ..., w_m), w_j in x1..xj.
struct FamilyVector {
  std::vector<RatFun> levels;
  int length() const { return static_cast<int>(levels.size()); }
};

FamilyVector as_vector(const CorrelationFamily& fam);

/// Laurent-mode map: (l_M w)_n is the coefficient of x1^{-M-2} in w_{n+1}
/// expanded around x1 = 0, renamed to x1..xn. The length drops by one.
FamilyVector apply_mode(ModeIndex mode, const FamilyVector& w);

/// For each pair (B_n, B_{n+1}), n < height: no pole beyond order 2 in the
/// first argument, order -2 coefficient alpha B_n, and order N-2 coefficient
/// L_{-N} B_n for 1 <= N <= n_max.
std::vector<CheckRecord> mode_expand_check(const CorrelationFamily& fam, int n_max);

struct LoweringResult {
  FamilyVector vector;
  std::vector<CheckRecord> checks;
};

/// l_{m_1} ... l_{m_r} (B) (rightmost applied first) compared componentwise
/// with L_{m_1} ... L_{m_r} B_n. Modes must be negative; throws
/// std::invalid_argument otherwise and std::length_error if the tower is too short.
LoweringResult lowering_compose(const CorrelationFamily& fam, const std::vector<ModeIndex>& modes);

struct StabilityResult {
  FamilyVector extracted;
  FamilyVector predicted;
  std::vector<CheckRecord> checks;
};

/// l_raise l_{m_1} ... l_{m_r} (B) by Laurent extraction, against the value
/// obtained by commuting l_raise to the right (l_M l_N = l_N l_M + (M-N) l_{M+N},
/// l_M B = 0 for M > 0, l_0 B = alpha B) and evaluating the remaining lowering
/// words with the differential operators.
StabilityResult stability_check(const CorrelationFamily& fam, ModeIndex raise, const std::vector<ModeIndex>& modes);

/// L_0 B_n for every level.
std::vector<CheckRecord> scaling_check(const CorrelationFamily& fam);
/// (kappa/2) L_{-1}^2 B_n - 2 L_{-2} B_n for every level.
std::vector<CheckRecord> degeneracy_check(const CorrelationFamily& fam, const RatFun& kappa);
/// B_n against B_n with two adjacent arguments swapped, for 2 <= n <= max_level.
std::vector<CheckRecord> symmetry_check(const CorrelationFamily& fam, int max_level);
/// Commutator defects for all lo <= m, n <= hi over the given functions.
std::vector<CheckRecord> commutator_sweep(const std::vector<RatFun>& functions, Arity arity, int lo, int hi);

}  // namespace sle
