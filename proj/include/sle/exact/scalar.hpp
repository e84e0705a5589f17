#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sle {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Parses "p/q", "-p", or a finite decimal such as "0.625" into an exact
/// rational. Throws std::invalid_argument on malformed input or q == 0.
BigRational parse_rational(std::string_view text);

/// "5/8", "-3", "0".
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

inline BigRational make_rational(long num, long den = 1) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace sle
