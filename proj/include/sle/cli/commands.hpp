#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sle::cli {

enum class Format { Json, Csv };

inline constexpr std::uint64_t kDefaultSeed = 314159;

struct RunConfig {
  std::string command;
  int tower_height = 4;
  int mode_depth = 4;
  /// Exact text such as "8/3"; parsed as a rational.
  std::string kappa = "8/3";
  std::string alpha = "5/8";
  int n_paths = 10000;
  int n_steps = 20000;
  std::uint64_t seed = kDefaultSeed;
  /// 0: hardware concurrency. Never part of a report.
  int threads = 0;
  std::string output;
  /// Unset: csv for simulate, json otherwise.
  std::optional<Format> format;
  bool emit_defects = false;
  std::string hull = "slit:1:0.5";
  double x = 1.0;
  std::vector<double> eps_grid{0.05, 0.1, 0.2, 0.4};
  /// Capacity horizon; unset picks each experiment's default.
  std::optional<double> capacity;
  int stride = 100;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct CommandOutput {
  int exit_code = 0;
  std::string report;
  /// Human-readable notes for stderr (failing checks, warnings).
  std::string diagnostics;
};

/// Runs one command. Never throws for bad input: errors become an error
/// report with exit code 2. Exit code 1 means some check failed.
CommandOutput run_command(const RunConfig& cfg);

/// Parses argv, runs, writes the report to --output (or out) and notes to err.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sle::cli
