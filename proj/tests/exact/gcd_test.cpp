#include <doctest.h>

#include "sle/exact/gcd.hpp"
#include "support/random_ratfun.hpp"

using namespace sle;

namespace {

IntPoly X(int j) { return IntPoly::variable(Var::x(j)); }
IntPoly A() { return IntPoly::variable(Var::alpha()); }
IntPoly K() { return IntPoly::variable(Var::kappa()); }

}  // namespace

TEST_CASE("gcd of explicit products") {
  IntPoly common = X(1) * X(2) + A().scaled(3) - IntPoly(1);
  IntPoly f = common * (X(1) - X(3)).pow(2);
  IntPoly g = common.scaled(-4) * (X(2) + K());
  CHECK(gcd(f, g) == common);
  CHECK(gcd(X(1) - X(2), X(1) + X(2)) == IntPoly(1));
  CHECK(gcd(X(1).scaled(6), X(1).pow(2).scaled(4)) == X(1).scaled(2));
  CHECK(gcd(IntPoly(), X(2).scaled(-1)) == X(2));
}

TEST_CASE("gcd with a nontrivial content in a second variable") {
  IntPoly f = (X(1) + X(2)) * (X(3).pow(2) + IntPoly(1)) * X(2);
  IntPoly g = (X(1) + X(2)).pow(2) * (X(3) - X(2));
  CHECK(gcd(f, g) == X(1) + X(2));
}

TEST_CASE("gcd recovers a planted common factor") {
  testing_support::RatFunGenerator gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    IntPoly h = gen.poly(2, 3);
    IntPoly p = gen.poly(2, 3);
    IntPoly q = gen.poly(2, 3);
    if (h.is_zero() || p.is_zero() || q.is_zero()) continue;
    IntPoly g = gcd(h * p, h * q);
    // g is divisible by h and divides both products.
    CHECK(divide_exact(g, h).has_value() == true);
    CHECK(divide_exact(h * p, g).has_value());
    CHECK(divide_exact(h * q, g).has_value());
    // cofactors are coprime
    IntPoly cp = *divide_exact(h * p, g);
    IntPoly cq = *divide_exact(h * q, g);
    CHECK(gcd(cp, cq).is_constant());
  }
}

TEST_CASE("rational roots of univariate constraints") {
  IntPoly f = K().scaled(3) - IntPoly(8);
  auto r = rational_roots(f, Var::kappa());
  REQUIRE(r.size() == 1);
  CHECK(r[0] == BigRational(8, 3));

  IntPoly g = A() * (A().scaled(8) - IntPoly(5)) * (A() + IntPoly(2));
  auto s = rational_roots(g, Var::alpha());
  REQUIRE(s.size() == 3);
  CHECK(s[0] == -2);
  CHECK(s[1] == 0);
  CHECK(s[2] == BigRational(5, 8));
  CHECK(rational_roots(A().pow(2) + IntPoly(1), Var::alpha()).empty());
}
