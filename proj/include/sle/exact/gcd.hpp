#pragma once

#include <vector>

#include "sle/exact/polynomial.hpp"

namespace sle {

/// Greatest common divisor in Z[a, k, x1, ...], normalized to a positive
/// leading coefficient. gcd(0, 0) == 0.
///
/// Monomial and integer contents are split off first; the primitive parts are
/// handled recursively, one variable at a time, with the subresultant PRS over
/// the ring of the remaining variables.
IntPoly gcd(const IntPoly& f, const IntPoly& g);

/// Content of p viewed as a polynomial in v (a polynomial free of v).
IntPoly content_in(const IntPoly& p, Var v);

/// Last nonzero subresultant of a and b as polynomials in v. Exposed for tests.
IntPoly subresultant_gcd_kernel(const IntPoly& a, const IntPoly& b, Var v);

/// Rational roots of a univariate integer polynomial in v, ascending, without
/// multiplicity.
std::vector<BigRational> rational_roots(const IntPoly& p, Var v);

}  // namespace sle
