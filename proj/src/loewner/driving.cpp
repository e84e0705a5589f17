#include "sle/loewner/driving.hpp"

#include <cmath>
#include <stdexcept>

namespace sle {

void SleParams::validate() const {
  if (!(kappa >= 0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be non-negative");
  if (!(capacity > 0) || !std::isfinite(capacity)) throw std::invalid_argument("capacity must be positive");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
}

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path_index, std::uint32_t stream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  // Stream keyed by (seed, path index); independent of scheduling.
  std::seed_seq key{lo(seed), hi(seed), lo(path_index), hi(path_index), stream};
  return std::mt19937_64(key);
}

DrivingPath sample_driving(const SleParams& p, std::uint64_t path_index) {
  p.validate();
  DrivingPath d;
  d.kappa = p.kappa;
  d.dt = p.dt();
  d.seed = p.seed;
  d.path_index = path_index;
  d.dw.resize(static_cast<std::size_t>(p.n_steps));
  d.w.resize(static_cast<std::size_t>(p.n_steps) + 1);

  std::mt19937_64 engine = path_engine(p.seed, path_index, 0);
  std::normal_distribution<double> normal(0.0, 1.0);

  const double scale = std::sqrt(p.kappa * d.dt);
  double w = 0;
  d.w[0] = 0;
  for (int k = 0; k < p.n_steps; ++k) {
    double step = scale * normal(engine);
    d.dw[static_cast<std::size_t>(k)] = step;
    w += step;
    d.w[static_cast<std::size_t>(k) + 1] = w;
  }
  return d;
}

}  // namespace sle
