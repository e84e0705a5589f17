#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sle/loewner/driving.hpp"

namespace sle {

using Complex = std::complex<double>;

/// Square root with Im >= 0 (for u off the non-negative reals).
/// Plain formula instead of std::sqrt: no overflow scaling is needed at the
/// magnitudes the flow produces and it is several times cheaper.
inline Complex upper_sqrt(Complex u) {
  const double a = u.real();
  const double b = u.imag();
  const double r = std::sqrt(a * a + b * b);
  if (a >= 0) {
    double t = std::sqrt(0.5 * (r + a));
    if (t == 0) return Complex(0, 0);
    double im = b / (2 * t);
    return im < 0 ? Complex(-t, -im) : Complex(t, im);
  }
  double t = std::sqrt(0.5 * (r - a));
  return Complex(b / (2 * t), t);
}

/// One capacity step with frozen driving value w: z -> w + sqrt((z - w)^2 + 4 dt),
/// branch chosen so the upper half-plane maps into itself and real points
/// keep their side of w. nullopt when z lies on the step's slit [w, w + 2i sqrt(dt)]
/// (including z == w): the point is swallowed.
std::optional<Complex> step_map(Complex z, double w, double dt);

/// step_map that also multiplies stretch2 by |d/dz step_map|^2.
std::optional<Complex> step_map(Complex z, double w, double dt, double& stretch2);

/// d/dz of step_map at z (valid where step_map is defined).
Complex step_derivative(Complex z, double w, double dt);

/// Inverse step z -> w + sqrt((z - w)^2 - 4 dt) with Im >= 0.
Complex inverse_step_map(Complex z, double w, double dt);

struct FlowState {
  Complex z;
  std::optional<double> swallowed_at;
  /// Running minimum of |z_t - W_t| over the steps taken.
  double min_gap = 0;
  /// Accumulated derivative g_t'(z0).
  Complex derivative{1.0, 0.0};
};

/// Flows z0 through all steps. A real point is swallowed when the driving
/// value jumps across it or lands on it; once swallowed the state is frozen.
FlowState flow_point(const DrivingPath& d, Complex z0);

struct TracePolyline {
  std::vector<Complex> points;
  std::vector<double> times;
};

/// gamma(t_i) for i = 0, stride, 2 stride, ..., n_steps, by pulling the tip
/// back through the inverse steps. Cost O(n^2 / stride).
TracePolyline trace(const DrivingPath& d, int stride);

/// gamma at a single grid index k (0 <= k <= n_steps).
Complex trace_point(const DrivingPath& d, int k);

/// One applied flow step: driving value frozen at w for capacity time dt.
struct FlowStep {
  double w;
  double dt;
};

/// The uniform grid of d as a step list.
std::vector<FlowStep> grid_steps(const DrivingPath& d);

/// gamma after the first k steps of an arbitrary step list.
Complex trace_point(std::span<const FlowStep> steps, std::size_t k);

/// "t,re,im" header and one row per point; shortest round-trip formatting.
std::string trace_csv(const TracePolyline& tr);

}  // namespace sle
