#include <doctest.h>

#include "oracle/jet.hpp"
#include "sle/exact/laurent.hpp"
#include "sle/ward/checks.hpp"

using namespace sle;

namespace {

const BigRational kAlpha = make_rational(5, 8);
const RatFun a = var(Var::alpha());

}  // namespace

TEST_CASE("mode expansion of the two-point function") {
  auto fam = build_tower(a, 2);
  LaurentSeries s = laurent_expand(fam.level(2), Var::x(1), -3, 0);
  auto coeff = [&](int order) { return s.coefficient(order).permuted(x_shift(-1)); };
  CHECK(coeff(-3).is_zero());
  CHECK(coeff(-2) == a * a / x(1).pow(2));
  CHECK(coeff(-1) == RatFun(2) * a / x(1).pow(3));
}

TEST_CASE("mode expansion agrees with the jet oracle") {
  auto fam = build_tower(RatFun(kAlpha), 3);
  std::vector<BigRational> ys{make_rational(3, 2), make_rational(7, 3)};
  LaurentSeries s = laurent_expand(fam.level(3), Var::x(1), -2, 2);
  std::array<BigRational, kMaxVars> p;
  p[static_cast<std::size_t>(Var::x(2).id)] = ys[0];
  p[static_cast<std::size_t>(Var::x(3).id)] = ys[1];
  for (int order = -2; order <= 2; ++order) {
    CHECK(s.coefficient(order).evaluate(p) == oracle::laurent_coefficient(kAlpha, ys, order));
  }
}

TEST_CASE("mode expansion check through level three and depth four") {
  auto fam = build_tower(RatFun(kAlpha), 4);
  auto records = mode_expand_check(fam, 4);
  CHECK(records.size() == 4u * 9u);
  for (const auto& r : records) {
    INFO(r.check, " level ", r.level, " defect ", r.defect.to_string());
    CHECK(r.exact_zero());
  }
}

TEST_CASE("lowering composition") {
  auto fam = build_tower(a, 3);
  auto one = lowering_compose(fam, {ModeIndex(-1)});
  CHECK(one.vector.levels[1] == RatFun(2) * a / x(1).pow(3));
  CHECK(all_exact(one.checks));
  auto two = lowering_compose(fam, {ModeIndex(-1), ModeIndex(-1)});
  CHECK(two.vector.levels[1] == RatFun(6) * a / x(1).pow(4));
  CHECK(all_exact(two.checks));
  auto none = lowering_compose(fam, {});
  for (int n = 0; n <= 3; ++n) CHECK(none.vector.levels[static_cast<std::size_t>(n)] == fam.level(n));
  CHECK_THROWS_AS(lowering_compose(fam, {ModeIndex(1)}), std::invalid_argument);
  CHECK_THROWS_AS(lowering_compose(build_tower(a, 1), {ModeIndex(-1), ModeIndex(-1)}), std::length_error);
}

TEST_CASE("lowering composition for words up to length two") {
  auto fam = build_tower(RatFun(kAlpha), 4);
  for (int m1 : {-1, -2}) {
    CHECK(all_exact(lowering_compose(fam, {ModeIndex(m1)}).checks));
    for (int m2 : {-1, -2}) CHECK(all_exact(lowering_compose(fam, {ModeIndex(m1), ModeIndex(m2)}).checks));
  }
}

TEST_CASE("stability under raising modes") {
  auto fam = build_tower(RatFun(kAlpha), 4);
  auto s1 = stability_check(fam, ModeIndex(1), {ModeIndex(-1)});
  CHECK(s1.extracted.levels[0] == RatFun(2 * kAlpha));
  CHECK(all_exact(s1.checks));
  auto s2 = stability_check(fam, ModeIndex(2), {ModeIndex(-2)});
  CHECK(s2.extracted.levels[0] == RatFun(4 * kAlpha));
  CHECK(all_exact(s2.checks));
  auto s0 = stability_check(fam, ModeIndex(1), {});
  for (const auto& level : s0.extracted.levels) CHECK(level.is_zero());
  for (int raise : {1, 2}) {
    for (int m1 : {-1, -2}) {
      for (int m2 : {-1, -2}) {
        auto r = stability_check(fam, ModeIndex(raise), {ModeIndex(m1), ModeIndex(m2)});
        CHECK(all_exact(r.checks));
      }
    }
  }
}
