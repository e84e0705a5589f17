#include "sle/exact/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>

namespace sle {

namespace {

struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

template <class Scalar>
bool is_unit_magnitude(const Scalar& c) {
  return c == 1 || c == -1;
}

template <class Scalar>
std::string coeff_literal(const Scalar& c) {
  if constexpr (std::is_same_v<Scalar, BigRational>) {
    if (c.get_den() != 1) return "(" + to_string(c) + ")";
    return c.get_num().get_str();
  } else {
    return c.get_str();
  }
}

}  // namespace

template <class Scalar>
Polynomial<Scalar>::Polynomial(const Scalar& c) {
  if (c != 0) terms_.push_back(Term{Monomial{}, c});
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::variable(Var v) {
  return monomial(Monomial::of(v), Scalar(1));
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::monomial(const Monomial& m, const Scalar& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back(Term{m, c});
  return p;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

template <class Scalar>
Scalar Polynomial<Scalar>::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Scalar(0);
}

template <class Scalar>
unsigned Polynomial<Scalar>::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

template <class Scalar>
std::uint32_t Polynomial<Scalar>::support() const {
  std::uint32_t mask = 0;
  for (const auto& t : terms_) mask |= t.mono.support();
  return mask;
}

template <class Scalar>
Monomial Polynomial<Scalar>::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) {
    if (m.is_one()) break;
    m = Monomial::gcd(m, t.mono);
  }
  return m;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

template <class Scalar, class Term>
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = Monomial::compare(a[i].mono, b[j].mono);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Scalar c = subtract ? Scalar(a[i].coeff - b[j].coeff) : Scalar(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

template <class Scalar>
Polynomial<Scalar>& Polynomial<Scalar>::operator+=(const Polynomial& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) return *this = rhs;
  terms_ = merge_terms<Scalar>(terms_, rhs.terms_, false);
  return *this;
}

template <class Scalar>
Polynomial<Scalar>& Polynomial<Scalar>::operator-=(const Polynomial& rhs) {
  if (rhs.terms_.empty()) return *this;
  terms_ = merge_terms<Scalar>(terms_, rhs.terms_, true);
  return *this;
}

template <class Scalar>
Polynomial<Scalar>& Polynomial<Scalar>::operator*=(const Polynomial& rhs) {
  *this = multiply(*this, rhs);
  return *this;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::multiply(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial{};
  const Polynomial& big = a.size() >= b.size() ? a : b;
  const Polynomial& small = a.size() >= b.size() ? b : a;

  // Monomial multiplication preserves the term order, so short factors are
  // handled by repeated merging.
  if (small.size() <= 6) {
    Polynomial acc;
    for (const auto& s : small.terms_) {
      Polynomial part;
      part.terms_.reserve(big.size());
      for (const auto& t : big.terms_) part.terms_.push_back(Term{t.mono * s.mono, Scalar(t.coeff * s.coeff)});
      acc += part;
    }
    return acc;
  }

  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  for (const auto& s : small.terms_) {
    for (const auto& t : big.terms_) {
      Scalar& slot = acc[t.mono * s.mono];
      slot += t.coeff * s.coeff;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back(Term{m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return Monomial::compare(x.mono, y.mono) > 0; });
  Polynomial r;
  r.terms_ = std::move(terms);
  return r;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::scaled(const Scalar& c) const {
  if (c == 0) return Polynomial{};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::times_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::over_monomial(const Monomial& m) const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.mono = t.mono / m;
  return r;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::pow(unsigned e) const {
  Polynomial result(Scalar(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = multiply(result, base);
    e >>= 1u;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::derivative(Var v) const {
  Polynomial r;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent(v);
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set_exponent(v, e - 1);
    r.terms_.push_back(Term{m, Scalar(t.coeff * static_cast<unsigned long>(e))});
  }
  return r;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::permuted(const std::array<int, kMaxVars>& perm) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      unsigned e = t.mono.exponent(Var{i});
      if (e == 0) continue;
      int target = perm[static_cast<std::size_t>(i)];
      if (target < 0 || target >= kMaxVars) throw std::out_of_range("variable permutation leaves the variable space");
      m.set_exponent(Var{target}, e);
    }
    out.push_back(Term{m, t.coeff});
  }
  return from_terms(std::move(out));
}

template <class Scalar>
std::vector<Polynomial<Scalar>> Polynomial<Scalar>::coefficients_in(Var v) const {
  std::vector<Polynomial> coeffs(degree(v) + 1);
  for (const auto& t : terms_) {
    unsigned e = t.mono.exponent(v);
    Monomial m = t.mono;
    m.set_exponent(v, 0);
    coeffs[e].terms_.push_back(Term{m, t.coeff});
  }
  return coeffs;
}

template <class Scalar>
Polynomial<Scalar> Polynomial<Scalar>::from_coefficients(const std::vector<Polynomial>& coeffs, Var v) {
  std::vector<Term> terms;
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    for (const auto& t : coeffs[e].terms_) {
      Monomial m = t.mono;
      m.set_exponent(v, m.exponent(v) + static_cast<unsigned>(e));
      terms.push_back(Term{m, t.coeff});
    }
  }
  return from_terms(std::move(terms));
}

template <class Scalar>
int Polynomial<Scalar>::compare(const Polynomial& a, const Polynomial& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = Monomial::compare(a.terms_[i].mono, b.terms_[i].mono);
    if (c != 0) return c;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

template <class Scalar>
std::string Polynomial<Scalar>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = t.coeff < 0;
    Scalar mag = negative ? Scalar(-t.coeff) : t.coeff;
    if (negative) {
      out += "-";
    } else if (!first) {
      out += "+";
    }
    if (t.mono.is_one()) {
      out += coeff_literal(mag);
    } else if (is_unit_magnitude(mag)) {
      out += t.mono.to_string();
    } else {
      out += coeff_literal(mag) + "*" + t.mono.to_string();
    }
    first = false;
  }
  return out;
}

template class Polynomial<BigInt>;
template class Polynomial<BigRational>;

std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  if (f.is_zero()) return IntPoly{};
  const auto& lt = g.leading_term();
  if (!lt.mono.divides(f.leading_term().mono)) return std::nullopt;
  for (int i = 0; i < kMaxVars; ++i) {
    if (g.degree(Var{i}) > f.degree(Var{i})) return std::nullopt;
  }

  if (g.is_monomial()) {
    std::vector<IntPoly::Term> q;
    q.reserve(f.size());
    for (const auto& t : f.terms()) {
      if (!lt.mono.divides(t.mono)) return std::nullopt;
      if (!mpz_divisible_p(t.coeff.get_mpz_t(), lt.coeff.get_mpz_t())) return std::nullopt;
      BigInt c;
      mpz_divexact(c.get_mpz_t(), t.coeff.get_mpz_t(), lt.coeff.get_mpz_t());
      q.push_back(IntPoly::Term{t.mono / lt.mono, std::move(c)});
    }
    return IntPoly::from_terms(std::move(q));
  }

  std::map<Monomial, BigInt, MonomialGreater> rem;
  for (const auto& t : f.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);

  std::vector<IntPoly::Term> quotient;
  BigInt qc;
  while (!rem.empty()) {
    auto head = rem.begin();
    if (!lt.mono.divides(head->first)) return std::nullopt;
    if (!mpz_divisible_p(head->second.get_mpz_t(), lt.coeff.get_mpz_t())) return std::nullopt;
    mpz_divexact(qc.get_mpz_t(), head->second.get_mpz_t(), lt.coeff.get_mpz_t());
    Monomial qm = head->first / lt.mono;
    rem.erase(head);
    bool first = true;
    for (const auto& t : g.terms()) {
      if (first) {
        first = false;
        continue;
      }
      Monomial key = qm * t.mono;
      auto it = rem.find(key);
      if (it == rem.end()) {
        it = rem.emplace(key, BigInt(0)).first;
      }
      mpz_submul(it->second.get_mpz_t(), qc.get_mpz_t(), t.coeff.get_mpz_t());
      if (it->second == 0) rem.erase(it);
    }
    quotient.push_back(IntPoly::Term{qm, qc});
  }
  return IntPoly::from_terms(std::move(quotient));
}

BigInt integer_content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt c = integer_content(p);
  if (p.leading_coeff() < 0) c = -c;
  if (c == 1) return p;
  std::vector<IntPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    terms.push_back(IntPoly::Term{t.mono, std::move(q)});
  }
  return IntPoly::from_terms(std::move(terms));
}

RatPoly to_rational(const IntPoly& p) {
  std::vector<RatPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(RatPoly::Term{t.mono, BigRational(t.coeff)});
  return RatPoly::from_terms(std::move(terms));
}

std::pair<IntPoly, BigRational> to_integral(const RatPoly& p) {
  if (p.is_zero()) return {IntPoly{}, BigRational(1)};
  BigInt lcm = 1;
  for (const auto& t : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  std::vector<IntPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    BigInt c = t.coeff.get_num() * (lcm / t.coeff.get_den());
    terms.push_back(IntPoly::Term{t.mono, std::move(c)});
  }
  IntPoly scaled = IntPoly::from_terms(std::move(terms));
  BigInt content = integer_content(scaled);
  if (scaled.leading_coeff() < 0) content = -content;
  IntPoly prim = primitive_part(scaled);
  BigRational factor(content, lcm);
  factor.canonicalize();
  return {std::move(prim), factor};
}

RatPoly substitute(const IntPoly& p, Var v, const BigRational& value) {
  std::vector<RatPoly::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    unsigned e = t.mono.exponent(v);
    BigRational c(t.coeff);
    if (e > 0) {
      BigRational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e);
      c *= pw;
    }
    Monomial m = t.mono;
    m.set_exponent(v, 0);
    terms.push_back(RatPoly::Term{m, std::move(c)});
  }
  return RatPoly::from_terms(std::move(terms));
}

BigRational evaluate(const IntPoly& p, const std::array<BigRational, kMaxVars>& point) {
  BigRational sum = 0;
  for (const auto& t : p.terms()) {
    BigRational term(t.coeff);
    for (int i = 0; i < kMaxVars; ++i) {
      unsigned e = t.mono.exponent(Var{i});
      for (unsigned r = 0; r < e; ++r) term *= point[static_cast<std::size_t>(i)];
    }
    sum += term;
  }
  return sum;
}

}  // namespace sle
