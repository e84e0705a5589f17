#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace sle {

/// Global variable space. Ids are fixed: a (=alpha), k (=kappa), then x1, x2, ...
inline constexpr int kMaxVars = 12;

struct Var {
  int id = 0;

  static constexpr Var alpha() { return Var{0}; }
  static constexpr Var kappa() { return Var{1}; }
  static constexpr Var x(int j) { return Var{1 + j}; }

  constexpr bool is_x() const { return id >= 2; }
  constexpr int x_index() const { return id - 1; }
  std::string name() const;

  friend constexpr bool operator==(Var, Var) = default;
  friend constexpr auto operator<=>(Var, Var) = default;
};

/// Highest x-index representable.
inline constexpr int kMaxXIndex = kMaxVars - 2;

/// Exponent vector over the global variable space. Only non-negative
/// exponents appear in polynomials; zero entries are simply absent from the
/// printed/serialized form.
class Monomial {
 public:
  Monomial() = default;

  static Monomial of(Var v, unsigned e = 1);

  unsigned exponent(Var v) const { return exps_[static_cast<std::size_t>(v.id)]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }
  void set_exponent(Var v, unsigned e);

  bool divides(const Monomial& other) const;
  /// Requires divides(*this, other) == true for `other / *this`.
  Monomial operator/(const Monomial& divisor) const;
  Monomial operator*(const Monomial& rhs) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  /// Graded lexicographic comparison over the variable order a > k > x1 > x2 > ...
  /// Returns <0, 0, >0.
  static int compare(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  std::size_t hash() const;
  std::string to_string() const;

  /// Bitmask of variables with a nonzero exponent.
  std::uint32_t support() const;

 private:
  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint16_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace sle
