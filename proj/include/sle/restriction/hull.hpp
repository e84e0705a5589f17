#pragma once

#include <string>
#include <string_view>

#include "sle/loewner/monitor.hpp"

namespace sle {

/// Restriction exponent alpha and boundary exponent s = 8/kappa - 1.
struct RestrictionParams {
  double alpha = 5.0 / 8.0;
  double s = 2.0;

  static RestrictionParams for_kappa(double kappa, double alpha = 5.0 / 8.0);
  /// Throws std::invalid_argument unless alpha > 0.
  void validate() const;
};

/// Obstacle attached to the positive real axis: the vertical slit
/// [x, x + iL] or the half-disk of radius r centred at x.
class HullSpec {
 public:
  enum class Kind { VerticalSlit, HalfDisk };

  /// Both throw std::invalid_argument when the hull is not bounded away from 0.
  static HullSpec vertical_slit(double x, double height);
  static HullSpec half_disk(double x, double radius);
  /// "slit:x:L" or "disk:x:r".
  static HullSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  double x() const { return x_; }
  /// Slit height or disk radius.
  double size() const { return size_; }

  /// phi'(0) for the map H \ hull -> H fixing 0 and infinity, phi(z) ~ z.
  double phi_prime_0() const;
  HullBoundary boundary() const;
  /// Capacity horizon for avoid runs: 4 (x + size)^2, times 256 when
  /// kappa > 4 because swallowing times are heavy tailed there.
  double horizon(double kappa) const;
  /// Canonical "slit:x:L" / "disk:x:r" text.
  std::string label() const;

 private:
  HullSpec(Kind kind, double x, double size);

  Kind kind_;
  double x_;
  double size_;
};

/// P[curve avoids hull] = phi'(0)^alpha.
double analytic_avoid_probability(const HullSpec& h, const RestrictionParams& rp);

/// eps^-2 (1 - (1 + 2 eps^2 / x^2)^(-alpha/2)): the finite-eps slit hit
/// probability of height eps sqrt(2), rescaled.
double exact_scaled_slit_hit(double x, double eps, double alpha);

}  // namespace sle
