#include "avint/harness/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "avint/bbm/bbm.hpp"
#include "avint/bbm/soliton.hpp"
#include "avint/core/errors.hpp"
#include "avint/generic/generic_ode.hpp"
#include "avint/harness/csv.hpp"
#include "avint/ode/auxiliary_scheme.hpp"
#include "avint/ode/baselines.hpp"
#include "avint/ode/trajectory.hpp"
#include "avint/problems/engine.hpp"
#include "avint/problems/kepler.hpp"
#include "avint/problems/kovalevskaya.hpp"

namespace avint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using StepFn = std::function<StepOutcome(const Vector&, double dt)>;

struct Setup {
  Vector x0;
  StepFn step;
  std::vector<std::string> state_columns;
  std::vector<Observer> observers;
  std::vector<std::string> drift_columns;
  std::vector<std::string> angle_columns;  // drifts taken modulo 2π
  std::shared_ptr<const bbm::Discretisation> bbm;  // keeps the discretisation alive
};

NewtonOptions newton_options(const ExperimentConfig& c) {
  NewtonOptions o;
  o.tol = c.newton_tol;
  o.max_iter = c.newton_max_iter;
  return o;
}

IntegralOperator integral_operator(const ExperimentConfig& c) {
  if (c.quad == "exact") {
    return IntegralOperator::exact(gauss_legendre_rule(c.quad_ref_stages));
  }
  return IntegralOperator::gauss(c.stages, c.quad_ref_stages);
}

StepFn wrap(AuxiliaryStepper stepper) {
  return [stepper = std::move(stepper)](const Vector& x, double dt) {
    const StepResult r = stepper.step(x, 0.0, dt);
    return StepOutcome{r.state, r.newton_iterations};
  };
}

StepFn midpoint(VectorField f, const NewtonOptions& newton) {
  return [f = std::move(f), newton](const Vector& x, double dt) {
    int iterations = 0;
    const auto residual = [&](const Vector& next) -> Vector {
      return next - x - dt * f(0.5 * (x + next));
    };
    const NewtonResult r = newton_solve(residual, std::nullopt, x, newton);
    iterations = r.iterations;
    return StepOutcome{r.solution, iterations};
  };
}

StepFn ode_baseline(const ExperimentConfig& c, const VectorField& f) {
  if (c.scheme == "im") {
    return midpoint(f, newton_options(c));
  }
  return wrap(gauss_stepper(f, c.stages, newton_options(c)));
}

Setup kepler_setup(const ExperimentConfig& c) {
  Setup s;
  s.x0 = kepler::standard_initial_state();
  s.state_columns = {"x1", "x2", "v1", "v2"};
  s.observers = {
      {"H", [](const Vector& x) { return kepler::invariants(x).energy; }},
      {"L", [](const Vector& x) { return kepler::invariants(x).angular_momentum; }},
      {"A1", [](const Vector& x) { return kepler::invariants(x).runge_lenz[0]; }},
      {"A2", [](const Vector& x) { return kepler::invariants(x).runge_lenz[1]; }},
      {"theta", [](const Vector& x) { return kepler::invariants(x).angle(); }},
  };
  s.drift_columns = {"H", "L", "A1", "A2", "theta"};
  s.angle_columns = {"theta"};
  if (c.scheme == "ours") {
    s.step = wrap(AuxiliaryStepper(conservative_field(kepler::conservative_system()),
                                   integral_operator(c), c.stages, newton_options(c)));
  } else if (c.scheme == "mvdg") {
    const PoissonSystem sys = kepler::poisson_system();
    const QuadratureRule ref = gauss_legendre_rule(c.quad_ref_stages);
    const NewtonOptions newton = newton_options(c);
    s.step = [sys, ref, newton](const Vector& x, double dt) {
      return StepOutcome{step_mean_value_dg(sys, x, dt, ref, newton), 0};
    };
  } else {
    s.step = ode_baseline(c, kepler::field);
  }
  return s;
}

Setup kovalevskaya_setup(const ExperimentConfig& c) {
  Setup s;
  s.x0 = kovalevskaya::standard_initial_state();
  s.state_columns = {"n1", "n2", "n3", "l1", "l2", "l3"};
  s.observers = {
      {"H", [](const Vector& x) { return kovalevskaya::invariants(x).energy; }},
      {"Nsq", [](const Vector& x) { return kovalevskaya::invariants(x).norm_squared; }},
      {"L", [](const Vector& x) { return kovalevskaya::invariants(x).momentum; }},
      {"K", [](const Vector& x) { return kovalevskaya::invariants(x).kovalevskaya; }},
  };
  s.drift_columns = {"H", "Nsq", "L", "K"};
  if (c.scheme == "ours") {
    s.step = wrap(AuxiliaryStepper(conservative_field(kovalevskaya::conservative_system()),
                                   integral_operator(c), c.stages, newton_options(c)));
  } else {
    s.step = ode_baseline(c, kovalevskaya::field);
  }
  return s;
}

engine::Params engine_params(const ExperimentConfig& c) {
  engine::Params p;
  p.cylinders = c.engine_cylinders;
  p.mean_volume = c.engine_mean_volume;
  p.heat_capacity = c.engine_heat_capacity;
  p.environment_temperature = c.engine_env_temperature;
  p.validate();
  return p;
}

Setup engine_setup(const ExperimentConfig& c) {
  const engine::Params p = engine_params(c);
  Setup s;
  s.x0 = c.engine_initial == "reflected" ? engine::reflected_state(p, c.engine_omega0)
                                          : engine::equilibrium_state(p, c.engine_omega0);
  s.state_columns = {"theta", "omega"};
  for (int k = 1; k <= p.cylinders; ++k) {
    s.state_columns.push_back("S_" + std::to_string(k));
  }
  s.state_columns.push_back("S_0");
  s.observers = {
      {"E", [p](const Vector& x) { return engine::quantities(p, x).energy; }},
      {"S", [p](const Vector& x) { return engine::quantities(p, x).entropy; }},
  };
  s.drift_columns = {"E", "S"};
  const GenericOdeSystem sys = engine::system(p);
  if (c.scheme == "ours") {
    s.step = wrap(AuxiliaryStepper(generic_field(sys), integral_operator(c), c.stages,
                                   newton_options(c)));
  } else {
    s.step = ode_baseline(c, [sys](const Vector& x) { return sys.field(x); });
  }
  return s;
}

Setup bbm_setup(const ExperimentConfig& c) {
  Setup s;
  auto disc = std::make_shared<const bbm::Discretisation>(
      PeriodicHermiteSpace(c.bbm_left, c.bbm_right, c.bbm_cells));
  s.bbm = disc;
  s.x0 = bbm::soliton_ic(disc->space());
  const PeriodicHermiteSpace* space = &disc->space();
  s.observers = {
      {"H", [space](const Vector& u) { return bbm::invariants(*space, u).energy; }},
      {"I1", [space](const Vector& u) { return bbm::invariants(*space, u).mass; }},
      {"I2", [space](const Vector& u) { return bbm::invariants(*space, u).h1; }},
      {"peak_x",
       [space](const Vector& u) {
         try {
           return bbm::peak_position(*space, u);
         } catch (const DomainError&) {
           return kNaN;
         }
       }},
  };
  s.drift_columns = {"H", "I1", "I2"};
  const NewtonOptions newton = newton_options(c);
  if (c.scheme == "ours") {
    auto stepper = std::make_shared<const bbm::ConservativeStepper>(*disc, c.stages, newton);
    s.step = [stepper, disc](const Vector& u, double dt) {
      const bbm::ConservativeStep r = stepper->step(u, dt);
      return StepOutcome{r.state, r.newton_iterations};
    };
  } else {
    auto stepper = std::make_shared<const bbm::GaussStepper>(*disc, c.stages, newton);
    s.step = [stepper, disc](const Vector& u, double dt) { return stepper->step(u, dt); };
  }
  return s;
}

Setup make_setup(const ExperimentConfig& c) {
  if (c.problem == "kepler") {
    return kepler_setup(c);
  }
  if (c.problem == "kovalevskaya") {
    return kovalevskaya_setup(c);
  }
  if (c.problem == "engine") {
    return engine_setup(c);
  }
  return bbm_setup(c);
}

std::vector<double> make_row(const Setup& s, std::size_t step, double t, const Vector& x) {
  std::vector<double> row{static_cast<double>(step), t};
  for (std::size_t i = 0; i < s.state_columns.size(); ++i) {
    row.push_back(x[static_cast<Eigen::Index>(i)]);
  }
  for (const auto& obs : s.observers) {
    row.push_back(obs.evaluate(x));
  }
  return row;
}

std::string stem_of(const std::string& path) {
  const std::filesystem::path p(path);
  return (p.parent_path() / p.stem()).string();
}

}  // namespace

std::size_t RunResult::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw ParameterError("no column '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> RunResult::series(const std::string& name) const {
  const std::size_t j = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    out.push_back(row[j]);
  }
  return out;
}

double RunResult::drift(const std::string& name) const {
  for (const auto& [key, value] : max_drifts) {
    if (key == name) {
      return value;
    }
  }
  throw ParameterError("no drift recorded for '" + name + "'");
}

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Setup setup = make_setup(config);
  const std::size_t steps = step_count(config.dt, config.t_final);

  RunResult result;
  result.columns = {"step", "t"};
  result.columns.insert(result.columns.end(), setup.state_columns.begin(),
                        setup.state_columns.end());
  for (const auto& obs : setup.observers) {
    result.columns.push_back(obs.name);
  }

  std::vector<double> pending_snapshots = config.snapshots;
  std::sort(pending_snapshots.begin(), pending_snapshots.end());
  const bool is_bbm = static_cast<bool>(setup.bbm);
  const auto maybe_snapshot = [&](double t, const Vector& x) {
    while (is_bbm && !pending_snapshots.empty() &&
           pending_snapshots.front() <= t + 0.5 * config.dt) {
      if (std::abs(pending_snapshots.front() - t) <= 0.5 * config.dt) {
        result.snapshots.emplace_back(t, x);
      }
      pending_snapshots.erase(pending_snapshots.begin());
    }
  };

  const auto start = std::chrono::steady_clock::now();
  Vector x = setup.x0;
  result.rows.push_back(make_row(setup, 0, 0.0, x));
  maybe_snapshot(0.0, x);
  for (std::size_t k = 0; k < steps; ++k) {
    try {
      StepOutcome next = setup.step(x, config.dt);
      x = std::move(next.state);
      result.newton_total += next.newton_iterations;
      result.newton_max = std::max(result.newton_max, next.newton_iterations);
    } catch (const std::exception& e) {
      result.failed_step = k;
      result.failure = e.what();
      break;
    }
    const double t = static_cast<double>(k + 1) * config.dt;
    result.rows.push_back(make_row(setup, k + 1, t, x));
    maybe_snapshot(t, x);
  }
  if (is_bbm && (result.snapshots.empty() ||
                 result.snapshots.back().first != result.rows.back()[1])) {
    result.snapshots.emplace_back(result.rows.back()[1], x);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  for (const auto& name : setup.drift_columns) {
    const std::size_t j = result.column(name);
    const bool angle = std::find(setup.angle_columns.begin(), setup.angle_columns.end(), name) !=
                       setup.angle_columns.end();
    double worst = 0.0;
    for (const auto& row : result.rows) {
      double diff = row[j] - result.rows.front()[j];
      if (angle) {
        diff = std::remainder(diff, 2.0 * std::numbers::pi);
      }
      worst = std::max(worst, std::abs(diff));
    }
    result.max_drifts.emplace_back(name, worst);
  }
  if (config.problem == "engine") {
    const std::size_t j = result.column("S");
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < result.rows.size(); ++k) {
      smallest = std::min(smallest, result.rows[k][j] - result.rows[k - 1][j]);
    }
    result.metrics.emplace_back("min_entropy_increment", smallest);
    const std::size_t e = result.column("E");
    result.metrics.emplace_back("final_energy_error",
                                result.rows.back()[e] - result.rows.front()[e]);
  }
  return result;
}

std::vector<std::string> summary_lines(const ExperimentConfig& config, const RunResult& result) {
  std::vector<std::string> lines{
      "problem=" + config.problem,
      "scheme=" + config.scheme,
      "stages=" + std::to_string(config.stages),
      "dt=" + format_number(config.dt),
      "t_final=" + format_number(config.t_final),
      "rows=" + std::to_string(result.rows.size()),
      "status=" + std::string(result.ok() ? "ok" : "failed"),
  };
  if (!result.ok()) {
    lines.push_back("failed_step=" + std::to_string(*result.failed_step));
    lines.push_back("failure=" + result.failure);
  }
  for (const auto& [name, value] : result.max_drifts) {
    lines.push_back("max_drift_" + name + "=" + format_number(value));
  }
  for (const auto& [name, value] : result.metrics) {
    lines.push_back(name + "=" + format_number(value));
  }
  const std::size_t steps = result.rows.empty() ? 0 : result.rows.size() - 1;
  lines.push_back("newton_total=" + std::to_string(result.newton_total));
  lines.push_back("newton_mean=" +
                  format_number(steps ? static_cast<double>(result.newton_total) / steps : 0.0));
  lines.push_back("newton_max=" + std::to_string(result.newton_max));
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", result.wall_seconds);
  lines.push_back(std::string("wall_seconds=") + wall);
  return lines;
}

std::string write_run(const ExperimentConfig& config, const RunResult& result) {
  const std::string path = resolve_output_path(config);
  write_csv_file(path, result.columns, result.rows);
  const std::string stem = stem_of(path);
  {
    std::ofstream out(stem + "_summary.txt", std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write summary for '" + path + "'");
    }
    for (const auto& line : summary_lines(config, result)) {
      out << line << '\n';
    }
  }
  if (!result.snapshots.empty()) {
    const PeriodicHermiteSpace space(config.bbm_left, config.bbm_right, config.bbm_cells);
    for (const auto& [t, u] : result.snapshots) {
      std::vector<std::vector<double>> rows;
      for (const auto& [xv, uv] : bbm::sample(space, u)) {
        rows.push_back({xv, uv});
      }
      write_csv_file(stem + "_snapshot_t" + format_number(t) + ".csv", {"x", "u"}, rows);
    }
  }
  return path;
}

double fit_order(const std::vector<std::pair<double, double>>& dt_error, double floor) {
  std::vector<std::pair<double, double>> sorted;
  for (const auto& point : dt_error) {
    if (std::isfinite(point.second)) {
      sorted.push_back(point);
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  // Keep the leading run of decreasing errors above the floor; past it round-off dominates.
  std::vector<std::pair<double, double>> used;
  for (const auto& [dt, err] : sorted) {
    if (err < floor || (!used.empty() && std::log(err) >= used.back().second)) {
      break;
    }
    used.emplace_back(std::log(dt), std::log(err));
  }
  if (used.size() < 2) {
    return kNaN;
  }
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : used) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(used.size());
  my /= static_cast<double>(used.size());
  double num = 0.0;
  double den = 0.0;
  for (const auto& [x, y] : used) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  return num / den;
}

ConvergenceResult convergence_study(const ExperimentConfig& config) {
  if (config.k_min > config.k_max || config.stages_list.empty()) {
    throw ParameterError("convergence study needs k_min ≤ k_max and a stage list");
  }
  const double period = 2.0 * std::numbers::pi;
  const Vector x0 = kepler::standard_initial_state();
  ConvergenceResult result;
  for (const int s : config.stages_list) {
    ExperimentConfig c = config;
    c.stages = s;
    const AuxiliaryStepper stepper(conservative_field(kepler::conservative_system()),
                                   integral_operator(c), s, newton_options(c));
    std::vector<std::pair<double, double>> pairs;
    for (int k = config.k_min; k <= config.k_max; ++k) {
      const double dt = period * std::ldexp(1.0, -k);
      double error = kNaN;
      try {
        Vector x = x0;
        for (long n = 0; n < (1L << k); ++n) {
          x = stepper.step(x, 0.0, dt).state;
        }
        error = (x.head<2>() - x0.head<2>()).norm();
      } catch (const std::exception&) {
        // Recorded as a missing cell.
      }
      result.points.push_back({dt, s, error});
      pairs.emplace_back(dt, error);
    }
    result.slopes[s] = fit_order(pairs);
  }
  return result;
}

std::string write_convergence(const ExperimentConfig& config, const ConvergenceResult& result) {
  const std::string path = resolve_output_path(config);
  std::vector<std::vector<double>> rows;
  for (const auto& p : result.points) {
    rows.push_back({p.dt, static_cast<double>(p.stages), p.error});
  }
  write_csv_file(path, {"dt", "s", "error"}, rows);
  std::ofstream out(stem_of(path) + "_summary.txt", std::ios::binary);
  for (const auto& [s, slope] : result.slopes) {
    out << "slope_s" << s << "=" << format_number(slope) << '\n';
  }
  return path;
}

const std::vector<ShippedExperiment>& shipped_experiments() {
  static const std::vector<ShippedExperiment> list{
      {"kepler_compare", "Kepler orbit, all four schemes, invariant drift to t=100"},
      {"kepler_convergence", "Kepler position error after one period, s=1..4"},
      {"kovalevskaya", "Kovalevskaya top, conservative cPG s=1 against implicit midpoint"},
      {"engine_short", "engine with dt=2^-4 to t=2^6, s=1..3, ours and Gauss"},
      {"engine_long", "engine with dt=2^-3, s=1, ours and Gauss"},
      {"bbm_long", "BBM soliton to t=2e4, ours and 2-stage Gauss"},
  };
  return list;
}

}  // namespace avint
