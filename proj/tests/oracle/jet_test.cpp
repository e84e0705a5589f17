#include <doctest.h>

#include "oracle/jet.hpp"

using oracle::Jet;
using oracle::Q;

TEST_CASE("jet inverse of a coordinate matches the geometric series") {
  Jet x = Jet::coordinate(1, 4, 0, 2);
  Jet inv = x.inverse();
  // 1/(2+t) = 1/2 - t/4 + t^2/8 - ...
  CHECK(inv.coeff({0}) == Q(1, 2));
  CHECK(inv.coeff({1}) == Q(-1, 4));
  CHECK(inv.coeff({2}) == Q(1, 8));
  CHECK(inv.coeff({4}) == Q(1, 32));
}

TEST_CASE("oracle recursion reproduces the one-point function") {
  Jet b1 = oracle::ward_jet(Q(5, 8), {Q(3)}, 2);
  CHECK(b1.value() == Q(5, 8) / 9);
  // d/dx (a/x^2) = -2a/x^3
  CHECK(b1.coeff({1}) == Q(-2) * Q(5, 8) / 27);
}

TEST_CASE("oracle two-point value matches the hand expansion") {
  Q a(7, 5);
  Q x(2), y(5);
  Jet b2 = oracle::ward_jet(a, {x, y}, 0);
  Q hand = a * a / (x * x * y * y) + 2 * a / (x * y * (y - x) * (y - x));
  CHECK(b2.value() == hand);
}

TEST_CASE("oracle evolution value at level one") {
  // a(3k - 8)/x^4 at s = 2
  Q a(3, 7), k(5, 2), x(3, 2);
  Q expected = a * (3 * k - 8) / (x * x * x * x);
  CHECK(oracle::evolution_value(a, k, 2, {x}) == expected);
}

TEST_CASE("oracle Laurent coefficients of the two-point function") {
  Q a(5, 8), y(3);
  CHECK(oracle::laurent_coefficient(a, {y}, -2) == a * a / (y * y));
  CHECK(oracle::laurent_coefficient(a, {y}, -1) == 2 * a / (y * y * y));
  CHECK(oracle::laurent_coefficient(a, {y}, 0) == 4 * a / (y * y * y * y));
}
