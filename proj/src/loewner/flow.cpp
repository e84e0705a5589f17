#include "sle/loewner/flow.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sle {

namespace {

// zeta^2 + c spelled out; std::complex multiplication goes through the
// NaN-recovering library routine.
Complex shifted_square(Complex zeta, double c) {
  const double a = zeta.real();
  const double b = zeta.imag();
  return Complex(a * a - b * b + c, 2 * a * b);
}

}  // namespace

std::optional<Complex> step_map(Complex z, double w, double dt) {
  if (dt <= 0) return z;
  const Complex zeta = z - w;
  if (zeta.imag() <= 0) {
    // boundary point: stays real on its own side of w
    if (zeta.real() == 0) return std::nullopt;
    double r = std::sqrt(zeta.real() * zeta.real() + 4 * dt);
    return Complex(w + std::copysign(r, zeta.real()), 0.0);
  }
  Complex s = upper_sqrt(shifted_square(zeta, 4 * dt));
  if (s.imag() == 0) return std::nullopt;  // on the slit
  return Complex(w + s.real(), s.imag());
}

std::optional<Complex> step_map(Complex z, double w, double dt, double& stretch2) {
  if (dt <= 0) return z;
  const Complex zeta = z - w;
  const double zeta2 = zeta.real() * zeta.real() + zeta.imag() * zeta.imag();
  if (zeta.imag() <= 0) {
    if (zeta.real() == 0) return std::nullopt;
    double r2 = zeta.real() * zeta.real() + 4 * dt;
    stretch2 *= zeta2 / r2;
    return Complex(w + std::copysign(std::sqrt(r2), zeta.real()), 0.0);
  }
  Complex s = upper_sqrt(shifted_square(zeta, 4 * dt));
  if (s.imag() == 0) return std::nullopt;
  stretch2 *= zeta2 / (s.real() * s.real() + s.imag() * s.imag());
  return Complex(w + s.real(), s.imag());
}

Complex step_derivative(Complex z, double w, double dt) {
  const Complex zeta = z - w;
  if (zeta.imag() <= 0) {
    double r = std::sqrt(zeta.real() * zeta.real() + 4 * dt);
    return Complex(std::abs(zeta.real()) / r, 0.0);
  }
  Complex s = upper_sqrt(shifted_square(zeta, 4 * dt));
  double n = s.real() * s.real() + s.imag() * s.imag();
  return Complex((zeta.real() * s.real() + zeta.imag() * s.imag()) / n,
                 (zeta.imag() * s.real() - zeta.real() * s.imag()) / n);
}

Complex inverse_step_map(Complex z, double w, double dt) {
  const Complex zeta = z - w;
  Complex s = std::sqrt(shifted_square(zeta, -4 * dt));
  if (s.imag() < 0 || (s.imag() == 0 && s.real() * zeta.real() < 0)) s = -s;
  Complex out = w + s;
  if (out.imag() < 0) out.imag(0);
  return out;
}

FlowState flow_point(const DrivingPath& d, Complex z0) {
  FlowState st;
  st.z = z0;
  double gap2 = std::norm(z0);
  const bool real = z0.imag() <= 0;
  for (int k = 0; k < d.n_steps(); ++k) {
    const double w = d.w[static_cast<std::size_t>(k)];
    gap2 = std::min(gap2, std::norm(st.z - w));
    if (real && k > 0) {
      const double prev = d.w[static_cast<std::size_t>(k) - 1];
      if ((st.z.real() - prev) * (st.z.real() - w) <= 0) {
        st.swallowed_at = d.time(k);
        st.min_gap = std::sqrt(gap2);
        return st;
      }
    }
    auto next = step_map(st.z, w, d.dt);
    if (!next) {
      st.swallowed_at = d.time(k);
      st.min_gap = std::sqrt(gap2);
      return st;
    }
    Complex f = step_derivative(st.z, w, d.dt);
    st.derivative = Complex(st.derivative.real() * f.real() - st.derivative.imag() * f.imag(),
                            st.derivative.real() * f.imag() + st.derivative.imag() * f.real());
    st.z = *next;
  }
  gap2 = std::min(gap2, std::norm(st.z - d.final_value()));
  st.min_gap = std::sqrt(gap2);
  return st;
}

Complex trace_point(const DrivingPath& d, int k) {
  if (k < 0 || k > d.n_steps()) throw std::out_of_range("trace index out of range");
  if (k == 0) return Complex(0, 0);
  const double root = std::sqrt(d.dt);
  Complex z(d.w[static_cast<std::size_t>(k) - 1], 2 * root);
  for (int j = k - 2; j >= 0; --j) z = inverse_step_map(z, d.w[static_cast<std::size_t>(j)], d.dt);
  return z;
}

std::vector<FlowStep> grid_steps(const DrivingPath& d) {
  std::vector<FlowStep> out;
  out.reserve(static_cast<std::size_t>(d.n_steps()));
  for (int k = 0; k < d.n_steps(); ++k) out.push_back(FlowStep{d.w[static_cast<std::size_t>(k)], d.dt});
  return out;
}

Complex trace_point(std::span<const FlowStep> steps, std::size_t k) {
  if (k > steps.size()) throw std::out_of_range("trace index out of range");
  if (k == 0) return Complex(0, 0);
  Complex z(steps[k - 1].w, 2 * std::sqrt(steps[k - 1].dt));
  for (std::size_t j = k - 1; j-- > 0;) z = inverse_step_map(z, steps[j].w, steps[j].dt);
  return z;
}

TracePolyline trace(const DrivingPath& d, int stride) {
  if (stride < 1) throw std::invalid_argument("trace stride must be positive");
  TracePolyline tr;
  const int n = d.n_steps();
  for (int k = 0;; k += stride) {
    if (k > n) k = n;
    tr.points.push_back(trace_point(d, k));
    tr.times.push_back(d.time(k));
    if (k == n) break;
  }
  return tr;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

std::string trace_csv(const TracePolyline& tr) {
  std::string out = "t,re,im\n";
  for (std::size_t i = 0; i < tr.points.size(); ++i) {
    append_double(out, tr.times[i]);
    out += ',';
    append_double(out, tr.points[i].real());
    out += ',';
    append_double(out, tr.points[i].imag());
    out += '\n';
  }
  return out;
}

}  // namespace sle
