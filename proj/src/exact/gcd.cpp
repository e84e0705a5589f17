#include "sle/exact/gcd.hpp"

#include <algorithm>
#include <stdexcept>

namespace sle {

namespace {

using Coeffs = std::vector<IntPoly>;

IntPoly positive(IntPoly p) {
  if (!p.is_zero() && p.leading_coeff() < 0) return -p;
  return p;
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw std::logic_error("gcd: expected exact division failed");
  return *std::move(q);
}

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int degree_of(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

// Pseudo-remainder lc(B)^(degA-degB+1) * A mod B.
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
  const IntPoly& lcb = b.back();
  int db = degree_of(b);
  int steps = degree_of(a) - db + 1;
  while (degree_of(a) >= db && !a.empty()) {
    IntPoly lca = a.back();
    int shift = degree_of(a) - db;
    for (auto& c : a) c = c * lcb;
    for (int i = 0; i <= db; ++i) {
      a[static_cast<std::size_t>(i + shift)] -= lca * b[static_cast<std::size_t>(i)];
    }
    trim(a);
    --steps;
  }
  if (steps > 0 && !a.empty()) {
    IntPoly scale = lcb.pow(static_cast<unsigned>(steps));
    for (auto& c : a) c = c * scale;
  }
  return a;
}

// Subresultant PRS; a and b primitive in v with deg a >= deg b >= 0.
Coeffs last_subresultant(Coeffs a, Coeffs b) {
  IntPoly g(1);
  IntPoly h(1);
  while (true) {
    int delta = degree_of(a) - degree_of(b);
    Coeffs r = pseudo_remainder(a, b);
    if (r.empty()) return b;
    if (degree_of(r) == 0) return r;
    a = std::move(b);
    IntPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = exact_quotient(c, divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_quotient(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
}

IntPoly gcd_primitive(const IntPoly& f, const IntPoly& g);

Var pick_variable(std::uint32_t mask, const IntPoly& f, const IntPoly& g) {
  int best = -1;
  unsigned best_deg = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    if (!((mask >> i) & 1u)) continue;
    unsigned d = std::max(f.degree(Var{i}), g.degree(Var{i}));
    if (best < 0 || d < best_deg) {
      best = i;
      best_deg = d;
    }
  }
  return Var{best};
}

Var first_variable(std::uint32_t mask) {
  for (int i = 0; i < kMaxVars; ++i) {
    if ((mask >> i) & 1u) return Var{i};
  }
  throw std::logic_error("empty variable mask");
}

IntPoly gcd_primitive(const IntPoly& f, const IntPoly& g) {
  if (f.is_constant() || g.is_constant()) return IntPoly(1);
  if (f == g) return positive(f);

  std::uint32_t sf = f.support();
  std::uint32_t sg = g.support();
  if ((sf & sg) == 0) return IntPoly(1);
  if (sf & ~sg) return gcd(content_in(f, first_variable(sf & ~sg)), g);
  if (sg & ~sf) return gcd(f, content_in(g, first_variable(sg & ~sf)));

  Var v = pick_variable(sf & sg, f, g);
  IntPoly cf = content_in(f, v);
  IntPoly cg = content_in(g, v);
  IntPoly hc = gcd(cf, cg);
  Coeffs a = exact_quotient(f, cf).coefficients_in(v);
  Coeffs b = exact_quotient(g, cg).coefficients_in(v);
  if (a.size() < b.size()) std::swap(a, b);

  Coeffs last = last_subresultant(std::move(a), std::move(b));
  if (degree_of(last) == 0) return positive(hc);
  IntPoly hv = IntPoly::from_coefficients(last, v);
  hv = primitive_part(exact_quotient(hv, content_in(hv, v)));
  return positive(hc * hv);
}

}  // namespace

IntPoly content_in(const IntPoly& p, Var v) {
  if (p.is_zero()) return p;
  if (!p.depends_on(v)) return positive(p);
  IntPoly acc;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    acc = acc.is_zero() ? positive(c) : gcd(acc, c);
    if (acc.is_constant() && acc.constant_term() == 1) break;
  }
  return acc;
}

IntPoly gcd(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero()) return positive(g);
  if (g.is_zero()) return positive(f);
  BigInt c;
  BigInt cf = integer_content(f);
  BigInt cg = integer_content(g);
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (f.is_constant() || g.is_constant()) return IntPoly(c);

  Monomial mf = f.monomial_content();
  Monomial mg = g.monomial_content();
  Monomial m = Monomial::gcd(mf, mg);
  IntPoly f1 = primitive_part(f.over_monomial(mf));
  IntPoly g1 = primitive_part(g.over_monomial(mg));
  IntPoly h = gcd_primitive(f1, g1);
  return positive(h.times_monomial(m).scaled(c));
}

IntPoly subresultant_gcd_kernel(const IntPoly& a, const IntPoly& b, Var v) {
  Coeffs ca = a.coefficients_in(v);
  Coeffs cb = b.coefficients_in(v);
  if (ca.size() < cb.size()) std::swap(ca, cb);
  return IntPoly::from_coefficients(last_subresultant(std::move(ca), std::move(cb)), v);
}

namespace {

std::vector<unsigned long long> divisors_of(const BigInt& z) {
  BigInt mag = abs(z);
  if (!mag.fits_ulong_p()) throw std::overflow_error("rational_roots: coefficient too large to enumerate divisors");
  unsigned long long n = mag.get_ui();
  std::vector<unsigned long long> out;
  for (unsigned long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

BigRational horner(const Coeffs& c, const BigRational& x) {
  BigRational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + BigRational(it->constant_term());
  return acc;
}

}  // namespace

std::vector<BigRational> rational_roots(const IntPoly& p, Var v) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  if (p.support() & ~(1u << v.id)) throw std::invalid_argument("rational_roots: polynomial is not univariate");
  Coeffs c = p.coefficients_in(v);
  std::vector<BigRational> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low].is_zero()) ++low;
  if (low > 0) {
    roots.push_back(BigRational(0));
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (c.size() > 1) {
    auto nums = divisors_of(c.front().constant_term());
    auto dens = divisors_of(c.back().constant_term());
    for (auto r : nums) {
      for (auto s : dens) {
        for (int sign : {1, -1}) {
          BigRational cand(BigInt(static_cast<unsigned long>(r)) * sign, BigInt(static_cast<unsigned long>(s)));
          cand.canonicalize();
          if (horner(c, cand) == 0) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace sle
