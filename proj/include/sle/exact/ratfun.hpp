#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sle/exact/polynomial.hpp"

namespace sle {

/// Exact multivariate rational function over Q in the variables a, k, x1, ...
///
/// Stored as num / (c * prod_i f_i^{e_i}) with
///   - num in Z[vars], c a positive integer, gcd(content(num), c) == 1;
///   - every f_i primitive, non-constant, positive-leading, the f_i pairwise
///     coprime, and no f_i dividing num.
/// Hence gcd(num, den) is a unit and the expanded denominator has positive
/// leading coefficient. Zero is 0/1.
///
/// Keeping the denominator factored lets sums and products of functions whose
/// poles sit on linear forms (x_j, x_i - x_j) be reduced by trial division
/// instead of full multivariate gcds. Values are immutable after construction.
class RatFun {
 public:
  struct Factor {
    IntPoly poly;
    int exponent = 1;
  };

  RatFun() = default;
  RatFun(long c);  // NOLINT(google-explicit-constructor): integer literals in expressions
  RatFun(const BigRational& c);  // NOLINT(google-explicit-constructor)
  explicit RatFun(const IntPoly& p);
  explicit RatFun(const RatPoly& p);

  static RatFun variable(Var v);
  /// num / den; throws std::domain_error if den is zero.
  static RatFun fraction(const IntPoly& num, const IntPoly& den);

  const IntPoly& numerator() const { return num_; }
  const BigInt& denominator_constant() const { return den_const_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }
  IntPoly expanded_denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  std::optional<BigRational> constant_value() const;
  std::uint32_t support() const;
  bool depends_on(Var v) const { return (support() >> v.id) & 1u; }
  std::vector<Var> variables() const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& f, const RatFun& g) { return add(f, g, false); }
  friend RatFun operator-(const RatFun& f, const RatFun& g) { return add(f, g, true); }
  friend RatFun operator*(const RatFun& f, const RatFun& g) { return multiply(f, g); }
  /// Throws std::domain_error when g is zero.
  friend RatFun operator/(const RatFun& f, const RatFun& g) { return multiply(f, g.inverse()); }
  RatFun& operator+=(const RatFun& g) { return *this = *this + g; }
  RatFun& operator-=(const RatFun& g) { return *this = *this - g; }
  RatFun& operator*=(const RatFun& g) { return *this = *this * g; }
  RatFun& operator/=(const RatFun& g) { return *this = *this / g; }

  /// Exact identity test: f == g iff f - g is the zero function.
  friend bool operator==(const RatFun& f, const RatFun& g) { return (f - g).is_zero(); }

  RatFun inverse() const;
  RatFun pow(int e) const;
  RatFun derivative(Var v) const;
  RatFun substitute(Var v, const BigRational& value) const;
  /// Variable i becomes perm[i].
  RatFun permuted(const std::array<int, kMaxVars>& perm) const;

  /// Exact value at a point; throws std::domain_error on a pole.
  BigRational evaluate(const std::array<BigRational, kMaxVars>& point) const;

  /// Canonical text: rational constant, monomial content and primitive part of
  /// the numerator over the monomial part and expanded remainder of the
  /// denominator, e.g. "a*(3*k-8)/x1^4" or "(5/8)/x1^2".
  std::string to_string() const;

 private:
  static RatFun add(const RatFun& f, const RatFun& g, bool subtract);
  static RatFun multiply(const RatFun& f, const RatFun& g);

  IntPoly num_;
  BigInt den_const_ = 1;
  std::vector<Factor> den_;

  friend class RatFunBuilder;
};

inline RatFun var(Var v) { return RatFun::variable(v); }
inline RatFun x(int j) { return RatFun::variable(Var::x(j)); }

/// Permutation that sends x_j to x_{j+shift} for j >= 1 (a and k fixed).
std::array<int, kMaxVars> x_shift(int shift);
/// Permutation swapping x_i and x_j.
std::array<int, kMaxVars> x_swap(int i, int j);

}  // namespace sle
