#include <doctest.h>

#include "sle/exact/scalar.hpp"

using namespace sle;

TEST_CASE("rationals are kept in lowest terms") {
  BigRational q = make_rational(10, -16);
  CHECK(to_string(q) == "-5/8");
  CHECK(q.get_den() > 0);
  CHECK(to_string(make_rational(0, 7)) == "0");
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("5/8") == make_rational(5, 8));
  CHECK(parse_rational("-8/3") == make_rational(-8, 3));
  CHECK(parse_rational("0.625") == make_rational(5, 8));
  CHECK(parse_rational(" 12 ") == make_rational(12));
  CHECK(parse_rational("+1/2") == make_rational(1, 2));
  CHECK(parse_rational("10/4") == make_rational(5, 2));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}
