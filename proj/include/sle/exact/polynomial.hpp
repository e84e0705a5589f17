#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sle/exact/monomial.hpp"
#include "sle/exact/scalar.hpp"

namespace sle {

/// Sparse multivariate polynomial with terms kept strictly decreasing in the
/// graded lexicographic order and no zero coefficients stored.
///
/// Instantiated for BigInt (the working ring of RatFun) and BigRational.
template <class Scalar>
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Scalar coeff;
  };

  Polynomial() = default;
  explicit Polynomial(const Scalar& c);
  explicit Polynomial(long c) : Polynomial(Scalar(c)) {}

  static Polynomial variable(Var v);
  static Polynomial monomial(const Monomial& m, const Scalar& c);
  /// Sorts and combines like terms; zero coefficients are dropped.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  const Term& leading_term() const { return terms_.front(); }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  Scalar constant_term() const;

  unsigned total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  unsigned degree(Var v) const;
  std::uint32_t support() const;
  bool depends_on(Var v) const { return (support() >> v.id) & 1u; }
  /// True for a primitive degree-one polynomial such as x1 - x2.
  bool is_linear() const { return total_degree() == 1; }

  /// Largest monomial dividing every term.
  Monomial monomial_content() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m) const;
  /// Requires the monomial to divide every term.
  Polynomial over_monomial(const Monomial& m) const;
  Polynomial pow(unsigned e) const;

  Polynomial derivative(Var v) const;
  /// Applies a variable permutation: variable i becomes perm[i].
  Polynomial permuted(const std::array<int, kMaxVars>& perm) const;

  /// Coefficients in powers of v (index = degree); each is free of v.
  std::vector<Polynomial> coefficients_in(Var v) const;
  static Polynomial from_coefficients(const std::vector<Polynomial>& coeffs, Var v);

  /// Total order used for canonical sorting (not a ring order).
  static int compare(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return compare(a, b) == 0; }

  /// Infix text with variables a, k, x1, ... in term order, e.g. "3*a*k-8*a".
  std::string to_string() const;

  static Polynomial multiply(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Term> terms_;
};

using IntPoly = Polynomial<BigInt>;
using RatPoly = Polynomial<BigRational>;

extern template class Polynomial<BigInt>;
extern template class Polynomial<BigRational>;

/// Exact quotient f / g if g divides f, otherwise nullopt. g must be nonzero.
std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g);

/// gcd of the integer coefficients (non-negative; 0 for the zero polynomial).
BigInt integer_content(const IntPoly& p);
/// p divided by its integer content, sign chosen so the leading coefficient is positive.
IntPoly primitive_part(const IntPoly& p);

RatPoly to_rational(const IntPoly& p);
/// p == result.second * result.first, with result.first integral, primitive and
/// positive-leading. The zero polynomial maps to (0, 1).
std::pair<IntPoly, BigRational> to_integral(const RatPoly& p);

/// Substitutes var := value (exact); returns a rational-coefficient polynomial.
RatPoly substitute(const IntPoly& p, Var v, const BigRational& value);
BigRational evaluate(const IntPoly& p, const std::array<BigRational, kMaxVars>& point);

}  // namespace sle
