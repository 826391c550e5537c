#include "avint/ode/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "avint/core/errors.hpp"

namespace avint {

namespace {

std::vector<double> observe(const std::vector<Observer>& observers, const Vector& x) {
  std::vector<double> out;
  out.reserve(observers.size());
  for (const auto& obs : observers) {
    out.push_back(obs.evaluate(x));
  }
  return out;
}

}  // namespace

double TimeSeries::max_drift(std::size_t observer) const {
  double worst = 0.0;
  for (const auto& row : observations) {
    worst = std::max(worst, std::abs(row.at(observer) - observations.front().at(observer)));
  }
  return worst;
}

std::size_t step_count(double dt, double t_final) {
  if (!(dt > 0.0) || !(t_final >= 0.0)) {
    throw ParameterError("need dt > 0 and t_final ≥ 0");
  }
  const double ratio = t_final / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw ParameterError("t_final must be an integer multiple of dt");
  }
  return static_cast<std::size_t>(rounded);
}

TimeSeries run_trajectory(const Stepper& stepper, const Vector& x0, double dt, double t_final,
                          const std::vector<Observer>& observers) {
  const std::size_t steps = step_count(dt, t_final);
  TimeSeries series;
  series.times.reserve(steps + 1);
  series.states.reserve(steps + 1);
  series.observations.reserve(steps + 1);
  series.newton_iterations.reserve(steps);

  series.times.push_back(0.0);
  series.states.push_back(x0);
  series.observations.push_back(observe(observers, x0));

  Vector x = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    try {
      StepOutcome next = stepper(x, t, dt);
      x = std::move(next.state);
      series.newton_iterations.push_back(next.newton_iterations);
    } catch (const StepError&) {
      throw;
    } catch (const std::exception& e) {
      throw StepError(k, e.what());
    }
    series.times.push_back(static_cast<double>(k + 1) * dt);
    series.states.push_back(x);
    series.observations.push_back(observe(observers, x));
  }
  return series;
}

}  // namespace avint
