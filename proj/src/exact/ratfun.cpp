#include "sle/exact/ratfun.hpp"

#include <algorithm>
#include <stdexcept>

#include "sle/exact/gcd.hpp"

namespace sle {

namespace {

using Factor = RatFun::Factor;

bool is_one(const IntPoly& p) { return p.is_constant() && p.constant_term() == 1; }

IntPoly variable_poly(Var v) { return IntPoly::variable(v); }

// gcd specialised to base factors (primitive, positive-leading, non-constant).
IntPoly factor_gcd(const IntPoly& p, const IntPoly& q) {
  if ((p.support() & q.support()) == 0) return IntPoly(1);
  if (p.is_linear() && q.is_linear()) return p == q ? p : IntPoly(1);
  if (p.is_linear()) return divide_exact(q, p) ? p : IntPoly(1);
  if (q.is_linear()) return divide_exact(p, q) ? q : IntPoly(1);
  return gcd(p, q);
}

struct MergedFactor {
  IntPoly poly;
  int ea = 0;
  int eb = 0;
};

// Inserts q^(ea, eb) into a pairwise-coprime base, splitting elements as
// needed so the base stays pairwise coprime and products are preserved.
void insert_coprime(std::vector<MergedFactor>& base, IntPoly q, int ea, int eb) {
  std::vector<MergedFactor> work{MergedFactor{std::move(q), ea, eb}};
  while (!work.empty()) {
    MergedFactor item = std::move(work.back());
    work.pop_back();
    if (item.poly.is_constant()) continue;
    bool placed = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
      auto& b = base[i];
      if (b.poly == item.poly) {
        b.ea += item.ea;
        b.eb += item.eb;
        placed = true;
        break;
      }
      IntPoly h = factor_gcd(b.poly, item.poly);
      if (is_one(h)) continue;
      MergedFactor old = std::move(b);
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
      IntPoly rest_old = *divide_exact(old.poly, h);
      IntPoly rest_new = *divide_exact(item.poly, h);
      work.push_back(MergedFactor{h, old.ea + item.ea, old.eb + item.eb});
      work.push_back(MergedFactor{std::move(rest_old), old.ea, old.eb});
      work.push_back(MergedFactor{std::move(rest_new), item.ea, item.eb});
      placed = true;
      break;
    }
    if (!placed) base.push_back(std::move(item));
  }
}

std::vector<MergedFactor> merge_bases(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  std::vector<MergedFactor> base;
  base.reserve(a.size() + b.size());
  for (const auto& f : a) base.push_back(MergedFactor{f.poly, f.exponent, 0});
  for (const auto& f : b) insert_coprime(base, f.poly, 0, f.exponent);
  return base;
}

// Splits a nonzero polynomial into sign * content * prod(factors).
struct Decomposition {
  int sign = 1;
  BigInt content = 1;
  std::vector<Factor> factors;
};

Decomposition decompose(const IntPoly& p) {
  Decomposition d;
  if (p.is_zero()) throw std::domain_error("division by zero rational function");
  d.sign = p.leading_coeff() < 0 ? -1 : 1;
  d.content = integer_content(p);
  if (p.is_constant()) return d;

  Monomial m = p.monomial_content();
  std::vector<MergedFactor> base;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned e = m.exponent(Var{i});
    if (e > 0) insert_coprime(base, variable_poly(Var{i}), static_cast<int>(e), 0);
  }
  IntPoly rest = primitive_part(p.over_monomial(m));
  // Peel off differences x_i - x_j, the usual poles of correlation functions.
  std::uint32_t mask = rest.support();
  for (int i = 2; i < kMaxVars && !rest.is_constant(); ++i) {
    if (!((mask >> i) & 1u)) continue;
    for (int j = i + 1; j < kMaxVars && !rest.is_constant(); ++j) {
      if (!((mask >> j) & 1u)) continue;
      IntPoly diff = variable_poly(Var{i}) - variable_poly(Var{j});
      int count = 0;
      while (!rest.is_constant()) {
        auto q = divide_exact(rest, diff);
        if (!q) break;
        rest = *std::move(q);
        ++count;
      }
      if (count > 0) insert_coprime(base, diff, count, 0);
    }
  }
  if (!rest.is_constant()) insert_coprime(base, primitive_part(rest), 1, 0);
  for (auto& b : base) d.factors.push_back(Factor{std::move(b.poly), b.ea});
  return d;
}

IntPoly expand_factors(const std::vector<Factor>& factors) {
  IntPoly acc(1);
  for (const auto& f : factors) acc = acc * f.poly.pow(static_cast<unsigned>(f.exponent));
  return acc;
}

IntPoly exact_div(const IntPoly& a, const BigInt& c) {
  if (c == 1) return a;
  std::vector<IntPoly::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    terms.push_back(IntPoly::Term{t.mono, std::move(q)});
  }
  return IntPoly::from_terms(std::move(terms));
}

void sort_factors(std::vector<Factor>& factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return IntPoly::compare(a.poly, b.poly) > 0; });
}

}  // namespace

/// Assembles canonical RatFun values from raw parts.
class RatFunBuilder {
 public:
  enum class Reduce { Full, ContentOnly };

  // num / (c * prod factors); factors pairwise coprime, primitive, positive-leading.
  // Factors for which skip(i) is true are known not to divide num.
  template <class Skip>
  static RatFun assemble(IntPoly num, BigInt c, std::vector<Factor> factors, Reduce mode, Skip skip) {
    RatFun r;
    if (num.is_zero()) return r;
    if (mode == Reduce::Full) {
      bool restart = true;
      while (restart) {
        restart = false;
        for (std::size_t i = 0; i < factors.size() && !restart; ++i) {
          auto& f = factors[i];
          if (skip(f)) continue;
          if (f.poly.is_linear()) {
            while (f.exponent > 0) {
              auto q = divide_exact(num, f.poly);
              if (!q) break;
              num = *std::move(q);
              --f.exponent;
            }
            continue;
          }
          while (f.exponent > 0) {
            IntPoly h = gcd(num, f.poly);
            if (is_one(primitive_part(h)) || h.is_constant()) break;
            h = primitive_part(h);
            if (h == f.poly) {
              num = *divide_exact(num, f.poly);
              --f.exponent;
              continue;
            }
            // Proper common divisor: refine the base and start over.
            std::vector<MergedFactor> base;
            for (std::size_t j = 0; j < factors.size(); ++j) {
              if (j == i || factors[j].exponent == 0) continue;
              base.push_back(MergedFactor{factors[j].poly, factors[j].exponent, 0});
            }
            insert_coprime(base, h, f.exponent, 0);
            insert_coprime(base, *divide_exact(f.poly, h), f.exponent, 0);
            factors.clear();
            for (auto& b : base) factors.push_back(Factor{std::move(b.poly), b.ea});
            restart = true;
            break;
          }
        }
      }
    }
    std::erase_if(factors, [](const Factor& f) { return f.exponent == 0; });

    BigInt g = integer_content(num);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 1) {
      num = exact_div(num, g);
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    sort_factors(factors);
    r.num_ = std::move(num);
    r.den_const_ = std::move(c);
    r.den_ = std::move(factors);
    return r;
  }

  static RatFun assemble(IntPoly num, BigInt c, std::vector<Factor> factors, Reduce mode) {
    return assemble(std::move(num), std::move(c), std::move(factors), mode, [](const Factor&) { return false; });
  }

  static RatFun add(const RatFun& f, const RatFun& g, bool subtract) {
    if (g.is_zero()) return f;
    if (f.is_zero()) return subtract ? -g : g;

    auto base = merge_bases(f.den_, g.den_);
    BigInt lcm;
    mpz_lcm(lcm.get_mpz_t(), f.den_const_.get_mpz_t(), g.den_const_.get_mpz_t());

    IntPoly cof_f(BigInt(lcm / f.den_const_));
    IntPoly cof_g(BigInt(lcm / g.den_const_));
    std::vector<Factor> den;
    den.reserve(base.size());
    for (const auto& b : base) {
      int e = std::max(b.ea, b.eb);
      if (e > b.ea) cof_f = cof_f * b.poly.pow(static_cast<unsigned>(e - b.ea));
      if (e > b.eb) cof_g = cof_g * b.poly.pow(static_cast<unsigned>(e - b.eb));
      den.push_back(Factor{b.poly, e});
    }
    IntPoly num = f.num_ * cof_f;
    IntPoly other = g.num_ * cof_g;
    if (subtract) {
      num -= other;
    } else {
      num += other;
    }
    return assemble(std::move(num), std::move(lcm), std::move(den), Reduce::Full);
  }

  static RatFun multiply(const RatFun& f, const RatFun& g) {
    if (f.is_zero() || g.is_zero()) return RatFun{};
    if (f.den_.empty() && g.den_.empty() && f.den_const_ == 1 && g.den_const_ == 1) {
      RatFun r;
      r.num_ = f.num_ * g.num_;
      return r;
    }
    // Cross-cancel each numerator against the other denominator first; the
    // product of the two reduced pieces is then already coprime.
    RatFun left = assemble(f.num_, g.den_const_, g.den_, Reduce::Full);
    RatFun right = assemble(g.num_, f.den_const_, f.den_, Reduce::Full);
    auto base = merge_bases(left.den_, right.den_);
    std::vector<Factor> den;
    den.reserve(base.size());
    for (auto& b : base) den.push_back(Factor{std::move(b.poly), b.ea + b.eb});
    return assemble(left.num_ * right.num_, BigInt(left.den_const_ * right.den_const_), std::move(den),
                    Reduce::ContentOnly);
  }

  static RatFun inverse(const RatFun& f) {
    Decomposition d = decompose(f.num_);
    IntPoly num = expand_factors(f.den_).scaled(BigInt(f.den_const_ * d.sign));
    return assemble(std::move(num), std::move(d.content), std::move(d.factors), Reduce::ContentOnly);
  }

  static RatFun from_fraction(const IntPoly& num, const IntPoly& den) {
    Decomposition d = decompose(den);
    return assemble(num.scaled(BigInt(d.sign)), std::move(d.content), std::move(d.factors), Reduce::Full);
  }

  static RatFun derivative(const RatFun& f, Var v) {
    if (!f.depends_on(v)) return RatFun{};
    std::vector<std::size_t> dep;
    for (std::size_t i = 0; i < f.den_.size(); ++i) {
      if (f.den_[i].poly.depends_on(v)) dep.push_back(i);
    }
    IntPoly product(1);
    for (auto i : dep) product = product * f.den_[i].poly;
    IntPoly num = f.num_.derivative(v) * product;
    if (!dep.empty()) {
      IntPoly sum;
      for (auto i : dep) {
        IntPoly term = f.den_[i].poly.derivative(v).scaled(BigInt(f.den_[i].exponent));
        for (auto j : dep) {
          if (j != i) term = term * f.den_[j].poly;
        }
        sum += term;
      }
      num -= f.num_ * sum;
    }
    std::vector<Factor> den = f.den_;
    for (auto i : dep) den[i].exponent += 1;
    // A linear factor in v never cancels: the numerator is congruent to
    // -num * e * f' * prod(others) modulo it.
    return assemble(std::move(num), f.den_const_, std::move(den), Reduce::Full,
                    [v](const Factor& fac) { return fac.poly.is_linear() && fac.poly.depends_on(v); });
  }

  static RatFun substitute(const RatFun& f, Var v, const BigRational& value) {
    if (!f.depends_on(v)) return f;
    auto [num, scale] = to_integral(sle::substitute(f.num_, v, value));
    BigRational ratio = scale / BigRational(f.den_const_);
    std::vector<MergedFactor> base;
    for (const auto& fac : f.den_) {
      if (!fac.poly.depends_on(v)) {
        insert_coprime(base, fac.poly, fac.exponent, 0);
        continue;
      }
      auto [p, s] = to_integral(sle::substitute(fac.poly, v, value));
      if (p.is_zero()) throw std::domain_error("substitution hits a pole");
      BigRational sp;
      mpz_pow_ui(sp.get_num_mpz_t(), s.get_num_mpz_t(), static_cast<unsigned long>(fac.exponent));
      mpz_pow_ui(sp.get_den_mpz_t(), s.get_den_mpz_t(), static_cast<unsigned long>(fac.exponent));
      ratio /= sp;
      Decomposition d = decompose(p);
      for (auto& sub : d.factors) insert_coprime(base, sub.poly, sub.exponent * fac.exponent, 0);
    }
    std::vector<Factor> den;
    for (auto& b : base) den.push_back(Factor{std::move(b.poly), b.ea});
    IntPoly scaled_num = num.scaled(ratio.get_num());
    return assemble(std::move(scaled_num), ratio.get_den(), std::move(den), Reduce::Full);
  }

  static RatFun permuted(const RatFun& f, const std::array<int, kMaxVars>& perm) {
    RatFun r;
    r.num_ = f.num_.permuted(perm);
    r.den_const_ = f.den_const_;
    bool flip = false;
    for (const auto& fac : f.den_) {
      IntPoly p = fac.poly.permuted(perm);
      if (p.leading_coeff() < 0) {
        p = -p;
        if (fac.exponent % 2 != 0) flip = !flip;
      }
      r.den_.push_back(Factor{std::move(p), fac.exponent});
    }
    if (flip) r.num_ = -r.num_;
    sort_factors(r.den_);
    return r;
  }
};

RatFun::RatFun(long c) : num_(BigInt(c)) {}

RatFun::RatFun(const BigRational& c) : num_(c.get_num()), den_const_(c.get_den()) {}

RatFun::RatFun(const IntPoly& p) : num_(p) {}

RatFun::RatFun(const RatPoly& p) {
  auto [q, scale] = to_integral(p);
  num_ = q.scaled(scale.get_num());
  den_const_ = scale.get_den();
}

RatFun RatFun::variable(Var v) { return RatFun(IntPoly::variable(v)); }

RatFun RatFun::fraction(const IntPoly& num, const IntPoly& den) { return RatFunBuilder::from_fraction(num, den); }

IntPoly RatFun::expanded_denominator() const { return expand_factors(den_).scaled(den_const_); }

std::optional<BigRational> RatFun::constant_value() const {
  if (!is_constant()) return std::nullopt;
  BigRational q(num_.constant_term(), den_const_);
  q.canonicalize();
  return q;
}

std::uint32_t RatFun::support() const {
  std::uint32_t mask = num_.support();
  for (const auto& f : den_) mask |= f.poly.support();
  return mask;
}

std::vector<Var> RatFun::variables() const {
  std::vector<Var> out;
  auto mask = support();
  for (int i = 0; i < kMaxVars; ++i) {
    if ((mask >> i) & 1u) out.push_back(Var{i});
  }
  return out;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::add(const RatFun& f, const RatFun& g, bool subtract) { return RatFunBuilder::add(f, g, subtract); }

RatFun RatFun::multiply(const RatFun& f, const RatFun& g) { return RatFunBuilder::multiply(f, g); }

RatFun RatFun::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero rational function");
  return RatFunBuilder::inverse(*this);
}

RatFun RatFun::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return RatFun(1);
  RatFun r;
  if (is_zero()) return r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  mpz_pow_ui(r.den_const_.get_mpz_t(), den_const_.get_mpz_t(), static_cast<unsigned long>(e));
  r.den_ = den_;
  for (auto& f : r.den_) f.exponent *= e;
  return r;
}

RatFun RatFun::derivative(Var v) const { return RatFunBuilder::derivative(*this, v); }

RatFun RatFun::substitute(Var v, const BigRational& value) const {
  return RatFunBuilder::substitute(*this, v, value);
}

RatFun RatFun::permuted(const std::array<int, kMaxVars>& perm) const { return RatFunBuilder::permuted(*this, perm); }

BigRational RatFun::evaluate(const std::array<BigRational, kMaxVars>& point) const {
  BigRational den(den_const_);
  for (const auto& f : den_) {
    BigRational v = sle::evaluate(f.poly, point);
    if (v == 0) throw std::domain_error("evaluation at a pole");
    for (int i = 0; i < f.exponent; ++i) den *= v;
  }
  return sle::evaluate(num_, point) / den;
}

namespace {

Var first_var(std::uint32_t mask) {
  int i = 0;
  while (!((mask >> i) & 1u)) ++i;
  return Var{i};
}

std::string rational_literal(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "(" + to_string(q) + ")";
}

}  // namespace

std::string RatFun::to_string() const {
  if (is_zero()) return "0";

  BigInt content = integer_content(num_);
  if (num_.leading_coeff() < 0) content = -content;
  BigRational k(content, den_const_);
  k.canonicalize();
  Monomial mono = num_.monomial_content();
  IntPoly prim = exact_div(num_.over_monomial(mono), content);

  std::vector<std::string> top;
  bool negative = k < 0;
  BigRational mag = negative ? BigRational(-k) : k;
  if (mag != 1) top.push_back(rational_literal(mag));
  if (!mono.is_one()) top.push_back(mono.to_string());
  if (!prim.is_constant()) top.push_back("(" + prim.to_string() + ")");

  std::string out = negative ? "-" : "";
  if (top.empty()) {
    out += "1";
  } else {
    for (std::size_t i = 0; i < top.size(); ++i) {
      if (i > 0) out += "*";
      out += top[i];
    }
  }

  Monomial den_mono;
  std::vector<Factor> rest;
  for (const auto& f : den_) {
    if (f.poly.is_monomial()) {
      den_mono = den_mono * Monomial::of(first_var(f.poly.support()), static_cast<unsigned>(f.exponent));
    } else {
      rest.push_back(f);
    }
  }
  std::vector<std::string> bottom;
  if (!den_mono.is_one()) bottom.push_back(den_mono.to_string());
  if (!rest.empty()) bottom.push_back("(" + expand_factors(rest).to_string() + ")");
  if (bottom.empty()) return out;

  std::uint32_t ms = den_mono.support();
  bool single_power = bottom.size() == 1 && (!rest.empty() || (ms & (ms - 1)) == 0);
  out += "/";
  if (single_power) {
    out += bottom.front();
  } else {
    out += "(";
    for (std::size_t i = 0; i < bottom.size(); ++i) {
      if (i > 0) out += "*";
      out += bottom[i];
    }
    out += ")";
  }
  return out;
}

std::array<int, kMaxVars> x_shift(int shift) {
  std::array<int, kMaxVars> perm{};
  for (int i = 0; i < kMaxVars; ++i) {
    if (i < 2) {
      perm[static_cast<std::size_t>(i)] = i;
      continue;
    }
    int target = i + shift;
    perm[static_cast<std::size_t>(i)] = (target >= 2 && target < kMaxVars) ? target : -1;
  }
  return perm;
}

std::array<int, kMaxVars> x_swap(int i, int j) {
  std::array<int, kMaxVars> perm{};
  for (int v = 0; v < kMaxVars; ++v) perm[static_cast<std::size_t>(v)] = v;
  std::swap(perm[static_cast<std::size_t>(Var::x(i).id)], perm[static_cast<std::size_t>(Var::x(j).id)]);
  return perm;
}

}  // namespace sle
