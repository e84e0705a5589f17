#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sle {

struct SleParams {
  double kappa = 8.0 / 3.0;
  /// Total half-plane capacity time T.
  double capacity = 1.0;
  int n_steps = 20000;
  std::uint64_t seed = 314159;

  double dt() const { return capacity / n_steps; }
  /// Throws std::invalid_argument unless kappa >= 0, T > 0 and n_steps >= 1.
  void validate() const;
};

/// Piecewise-constant Brownian driving W = sqrt(kappa) B on a uniform grid.
/// Step k runs over [t_k, t_{k+1}] with the value w[k] = W(t_k); w[0] = 0.
struct DrivingPath {
  double kappa = 0;
  double dt = 0;
  std::vector<double> dw;
  std::vector<double> w;
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;

  int n_steps() const { return static_cast<int>(dw.size()); }
  double time(int k) const { return k * dt; }
  double final_value() const { return w.back(); }
};

/// Engine for stream `stream` of one path; stream 0 drives the grid and
/// other streams feed refinements such as Brownian bridges.
std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path_index, std::uint32_t stream);

/// Deterministic in (p.seed, path_index); each path owns an independent stream.
DrivingPath sample_driving(const SleParams& p, std::uint64_t path_index = 0);

}  // namespace sle
