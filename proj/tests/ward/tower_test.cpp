#include <doctest.h>

#include "oracle/jet.hpp"
#include "sle/ward/checks.hpp"

using namespace sle;

namespace {

const RatFun a = var(Var::alpha());
const RatFun k = var(Var::kappa());

using Point = std::array<BigRational, kMaxVars>;

Point at(const BigRational& alpha, const BigRational& kappa, const std::vector<BigRational>& xs) {
  Point p;
  p[static_cast<std::size_t>(Var::alpha().id)] = alpha;
  p[static_cast<std::size_t>(Var::kappa().id)] = kappa;
  for (std::size_t j = 0; j < xs.size(); ++j) p[static_cast<std::size_t>(Var::x(static_cast<int>(j) + 1).id)] = xs[j];
  return p;
}

std::vector<BigRational> xs_for(int n, int seed) {
  std::vector<BigRational> out;
  for (int j = 0; j < n; ++j) out.push_back(make_rational(3 + 7 * j + seed, 4 + j));
  return out;
}

}  // namespace

TEST_CASE("seed family") {
  auto sym = seed_family(a);
  REQUIRE(sym.height() == 1);
  CHECK(sym.level(0) == RatFun(1));
  CHECK(sym.level(1) == a / x(1).pow(2));
  CHECK_FALSE(sym.degenerate);
  auto fixed = seed_family(RatFun(make_rational(5, 8)));
  CHECK(fixed.level(1).to_string() == "(5/8)/x1^2");
  auto zero = seed_family(RatFun(0));
  CHECK(zero.degenerate);
  CHECK(zero.level(1).is_zero());
}

TEST_CASE("two-point function matches the hand expansion") {
  auto fam = ward_extend(seed_family(a));
  REQUIRE(fam.height() == 2);
  // fresh argument is x1, the old x1 is x2
  RatFun hand = a * a / (x(1).pow(2) * x(2).pow(2)) + RatFun(2) * a / (x(1) * x(2) * (x(2) - x(1)).pow(2));
  CHECK(fam.level(2) == hand);
  CHECK(fam.provenance.back() == "ward");
}

TEST_CASE("tower values agree with the jet oracle") {
  const BigRational alpha = make_rational(5, 8);
  auto fam = build_tower(RatFun(alpha), 4);
  for (int n = 1; n <= 4; ++n) {
    for (int seed = 0; seed < 3; ++seed) {
      auto xs = xs_for(n, seed);
      CHECK(fam.level(n).evaluate(at(alpha, 0, xs)) == oracle::ward_jet(alpha, xs, 0).value());
    }
  }
}

TEST_CASE("tower is symmetric in its arguments") {
  auto fam = build_tower(RatFun(make_rational(5, 8)), 4);
  for (const auto& r : symmetry_check(fam, 4)) {
    INFO(r.check, " level ", r.level);
    CHECK(r.exact_zero());
  }
  // a non-adjacent swap and a symbolic alpha as well
  CHECK(fam.level(4).permuted(x_swap(1, 4)) == fam.level(4));
  auto sym = build_tower(a, 3);
  CHECK(sym.level(3).permuted(x_swap(1, 3)) == sym.level(3));
}

TEST_CASE("rebuilding the tower is deterministic") {
  auto f1 = build_tower(a, 3);
  auto f2 = build_tower(a, 3);
  for (int n = 0; n <= 3; ++n) CHECK(f1.level(n).to_string() == f2.level(n).to_string());
}

TEST_CASE("poles sit at 0 and at the other arguments with order at most two") {
  auto fam = build_tower(RatFun(make_rational(5, 8)), 3);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : fam.level(n).denominator_factors()) {
      CHECK(f.exponent <= 2);
      CHECK(f.poly.total_degree() == 1);
      bool single = f.poly.size() == 1;
      bool difference = f.poly.size() == 2;
      CHECK((single || difference));
    }
  }
}

TEST_CASE("evolution defect at levels one and two") {
  auto sym = build_tower(a, 2);
  auto d1 = evolution_defect(sym, k, 2);
  CHECK(d1[1] == a * (RatFun(3) * k - RatFun(8)) / x(1).pow(4));
  CHECK(d1[1].to_string() == "a*(3*k-8)/x1^4");
  auto d2 = evolution_defect(sym, RatFun(make_rational(8, 3)), 2);
  CHECK(d2[2] == RatFun(make_rational(4, 3)) * a * (RatFun(8) * a - RatFun(5)) / (x(1).pow(3) * x(2).pow(3)));
}

TEST_CASE("symbolic defects agree with the jet oracle at sample points") {
  auto sym = build_tower(a, 2);
  auto d1 = evolution_defect(sym, k, 2);
  auto d2 = evolution_defect(sym, RatFun(make_rational(8, 3)), 2);
  for (int trial = 0; trial < 4; ++trial) {
    BigRational alpha = make_rational(trial + 1, 7);
    BigRational kappa = make_rational(2 * trial + 3, 5);
    auto xs = xs_for(2, trial);
    CHECK(d1[1].evaluate(at(alpha, kappa, {xs[0]})) == oracle::evolution_value(alpha, kappa, 2, {xs[0]}));
    CHECK(d2[2].evaluate(at(alpha, 0, xs)) == oracle::evolution_value(alpha, make_rational(8, 3), 2, xs));
  }
}

TEST_CASE("evolution defect vanishes through level four at (8/3, 5/8)") {
  auto fam = build_tower(RatFun(make_rational(5, 8)), 4);
  auto d = evolution_defect(fam, RatFun(make_rational(8, 3)), 2);
  for (int n = 1; n <= 4; ++n) CHECK(d[static_cast<std::size_t>(n)].is_zero());
  // and the oracle agrees that level 3 is zero at a sample point
  CHECK(oracle::evolution_value(make_rational(5, 8), make_rational(8, 3), 2, xs_for(3, 1)) == 0);
}

TEST_CASE("derive constants") {
  DerivedConstants dc = derive_constants();
  CHECK(dc.kappa == make_rational(8, 3));
  CHECK(dc.alpha == make_rational(5, 8));
  CHECK(RatFun(dc.level1_constraint) == a * (RatFun(3) * k - RatFun(8)));
  // proportional to a(8a - 5)
  auto ratio = RatFun(dc.level2_constraint) / (a * (RatFun(8) * a - RatFun(5)));
  CHECK(ratio.is_constant());
  CHECK(all_exact(dc.cross_checks));
}

TEST_CASE("degeneracy and scaling through level four") {
  auto fam = build_tower(RatFun(make_rational(5, 8)), 4);
  CHECK(all_exact(degeneracy_check(fam, RatFun(make_rational(8, 3)))));
  CHECK(all_exact(scaling_check(fam)));
  auto off = build_tower(RatFun(make_rational(1, 2)), 2);
  auto dg = degeneracy_check(off, RatFun(make_rational(8, 3)));
  CHECK(dg[2].check == "degeneracy");
  CHECK_FALSE(dg[2].exact_zero());
}
