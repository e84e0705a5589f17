#include "sle/exact/monomial.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace sle {

std::string Var::name() const {
  if (id == 0) return "a";
  if (id == 1) return "k";
  return "x" + std::to_string(x_index());
}

Monomial Monomial::of(Var v, unsigned e) {
  Monomial m;
  m.set_exponent(v, e);
  return m;
}

void Monomial::set_exponent(Var v, unsigned e) {
  if (v.id < 0 || v.id >= kMaxVars) throw std::out_of_range("variable id out of range");
  auto& slot = exps_[static_cast<std::size_t>(v.id)];
  degree_ = static_cast<std::uint16_t>(degree_ - slot + e);
  slot = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    assert(exps_[i] >= divisor.exps_[i]);
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - divisor.exps_[i]);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ - divisor.degree_);
  return r;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial r;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] + rhs.exps_[i]);
  }
  r.degree_ = static_cast<std::uint16_t>(degree_ + rhs.degree_);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    d += r.exps_[i];
  }
  r.degree_ = static_cast<std::uint16_t>(d);
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  for (std::size_t i = 0; i < a.exps_.size(); ++i) {
    if (a.exps_[i] != b.exps_[i]) return a.exps_[i] < b.exps_[i] ? -1 : 1;
  }
  return 0;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint32_t Monomial::support() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0) mask |= 1u << i;
  }
  return mask;
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned e = exps_[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += Var{i}.name();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

}  // namespace sle
