/**
 * @file trajectory.hpp
 * @brief Fixed-step time loop with per-step observers.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "avint/core/types.hpp"

namespace avint {

/// One step from (state, t) with length dt; returns the new state and its Newton iteration count.
struct StepOutcome {
  Vector state;
  int newton_iterations = 0;
};
using Stepper = std::function<StepOutcome(const Vector& state, double t, double dt)>;

struct Observer {
  std::string name;
  std::function<double(const Vector&)> evaluate;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<Vector> states;
  /// observations[k][j] is observer j at record k.
  std::vector<std::vector<double>> observations;
  std::vector<int> newton_iterations;  // one per step

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
  /// max_k |observer_j(k) − observer_j(0)|.
  [[nodiscard]] double max_drift(std::size_t observer) const;
};

/// Number of steps of size dt covering [0, t_final]; t_final must be a multiple of dt to 1e−9.
[[nodiscard]] std::size_t step_count(double dt, double t_final);

/**
 * @brief Iterates `stepper` from x0 for step_count(dt, t_final) steps, recording the state and
 * every observer at each endpoint (including the initial one).
 *
 * Any exception from the stepper is rethrown as StepError carrying the zero-based step index.
 */
[[nodiscard]] TimeSeries run_trajectory(const Stepper& stepper, const Vector& x0, double dt,
                                        double t_final, const std::vector<Observer>& observers);

}  // namespace avint
