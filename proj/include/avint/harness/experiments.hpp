/**
 * @file experiments.hpp
 * @brief Runs configured experiments in memory and persists them as CSV plus a summary.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avint/core/types.hpp"
#include "avint/harness/config.hpp"

namespace avint {

struct RunResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Invariant columns and their max |value − initial value| over the run.
  std::vector<std::pair<std::string, double>> max_drifts;
  /// Further scalar diagnostics (e.g. the smallest per-step entropy change).
  std::vector<std::pair<std::string, double>> metrics;
  double wall_seconds = 0.0;
  long newton_total = 0;
  int newton_max = 0;
  std::optional<std::size_t> failed_step;
  std::string failure;
  /// bbm only: coefficient vectors at the requested snapshot times and at the final time.
  std::vector<std::pair<double, Vector>> snapshots;

  [[nodiscard]] bool ok() const noexcept { return !failed_step.has_value(); }
  [[nodiscard]] std::size_t column(const std::string& name) const;
  [[nodiscard]] std::vector<double> series(const std::string& name) const;
  [[nodiscard]] double drift(const std::string& name) const;
};

/// Runs the configured trajectory; a failing step ends the run and is recorded, not thrown.
[[nodiscard]] RunResult run_experiment(const ExperimentConfig& config);

/// Summary lines "key=value", in a fixed order.
[[nodiscard]] std::vector<std::string> summary_lines(const ExperimentConfig& config,
                                                     const RunResult& result);

/// Writes the CSV, the summary and any snapshot files; returns the CSV path.
std::string write_run(const ExperimentConfig& config, const RunResult& result);

struct ConvergencePoint {
  double dt = 0.0;
  int stages = 0;
  double error = 0.0;  // NaN when the run failed
};

struct ConvergenceResult {
  std::vector<ConvergencePoint> points;
  std::map<int, double> slopes;
};

/// Least-squares slope of log(error) against log(dt). Failed (NaN) points are skipped; from the
/// largest dt down, the fit stops at the first error below `floor` or not below its predecessor.
[[nodiscard]] double fit_order(const std::vector<std::pair<double, double>>& dt_error,
                               double floor = 1e-10);

/// Kepler with the standard orbit: ‖x(2π) − x(0)‖ for dt = 2π·2^{−k}, k = k_min … k_max.
[[nodiscard]] ConvergenceResult convergence_study(const ExperimentConfig& config);
std::string write_convergence(const ExperimentConfig& config, const ConvergenceResult& result);

struct ShippedExperiment {
  std::string name;
  std::string description;
};
[[nodiscard]] const std::vector<ShippedExperiment>& shipped_experiments();

}  // namespace avint
