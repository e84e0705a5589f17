#include "sle/restriction/hull.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sle {

RestrictionParams RestrictionParams::for_kappa(double kappa, double alpha) {
  if (!(kappa > 0)) throw std::invalid_argument("RestrictionParams: kappa must be positive");
  RestrictionParams rp{alpha, 8.0 / kappa - 1.0};
  rp.validate();
  return rp;
}

void RestrictionParams::validate() const {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw std::invalid_argument("RestrictionParams: alpha must be positive");
}

HullSpec::HullSpec(Kind kind, double x, double size) : kind_(kind), x_(x), size_(size) {
  if (!std::isfinite(x) || !std::isfinite(size) || !(size > 0)) {
    throw std::invalid_argument("hull: size must be positive and finite");
  }
  if (!(x > 0)) throw std::invalid_argument("hull: base point must satisfy x > 0");
  if (kind == Kind::HalfDisk && !(size < x)) throw std::invalid_argument("hull: half-disk must satisfy r < x");
}

HullSpec HullSpec::vertical_slit(double x, double height) { return HullSpec(Kind::VerticalSlit, x, height); }

HullSpec HullSpec::half_disk(double x, double radius) { return HullSpec(Kind::HalfDisk, x, radius); }

namespace {

double parse_number(std::string_view s, std::string_view whole) {
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("hull: cannot parse number in '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

HullSpec HullSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw std::invalid_argument("hull: expected kind:x:size, got '" + std::string(text) + "'");
  double x = parse_number(parts[1], text);
  double size = parse_number(parts[2], text);
  if (parts[0] == "slit") return vertical_slit(x, size);
  if (parts[0] == "disk") return half_disk(x, size);
  throw std::invalid_argument("hull: unknown kind '" + std::string(parts[0]) + "' (slit or disk)");
}

double HullSpec::phi_prime_0() const {
  if (kind_ == Kind::VerticalSlit) return x_ / std::hypot(x_, size_);
  return 1.0 - (size_ * size_) / (x_ * x_);
}

HullBoundary HullSpec::boundary() const {
  if (kind_ == Kind::VerticalSlit) return HullBoundary::vertical_segment(x_, size_);
  return HullBoundary::semicircle(x_, size_);
}

double HullSpec::horizon(double kappa) const {
  double reach = x_ + size_;
  return 4 * reach * reach * (kappa > 4 ? 256.0 : 1.0);
}

std::string HullSpec::label() const {
  auto fmt = [](double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
  };
  return (kind_ == Kind::VerticalSlit ? "slit:" : "disk:") + fmt(x_) + ":" + fmt(size_);
}

double analytic_avoid_probability(const HullSpec& h, const RestrictionParams& rp) {
  rp.validate();
  return std::pow(h.phi_prime_0(), rp.alpha);
}

double exact_scaled_slit_hit(double x, double eps, double alpha) {
  double u = 2 * eps * eps / (x * x);
  // -expm1(log1p(u) * (-alpha/2)) keeps precision as eps -> 0
  return -std::expm1(-0.5 * alpha * std::log1p(u)) / (eps * eps);
}

}  // namespace sle
