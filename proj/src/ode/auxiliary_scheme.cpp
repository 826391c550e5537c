#include "avint/ode/auxiliary_scheme.hpp"

#include <utility>

#include "avint/core/errors.hpp"

namespace avint {

AuxiliaryStepper::AuxiliaryStepper(AuxiliaryField field, const IntegralOperator& op, int stages,
                                   NewtonOptions newton)
    : field_(std::move(field)), disc_(op, stages), newton_(newton) {
  if (!field_.field) {
    throw ParameterError("auxiliary scheme needs a modified vector field");
  }
  for (const auto& target : field_.targets) {
    if (!target.evaluate) {
      throw ParameterError("auxiliary target without an evaluator");
    }
  }
}

Vector AuxiliaryStepper::residual(const Vector& x0, double dt, const Vector& stages) const {
  const int s = disc_.stages();
  const Eigen::Index d = x0.size();
  Matrix nodal(d, s + 1);
  nodal.col(0) = x0;
  nodal.rightCols(s) = Eigen::Map<const Matrix>(stages.data(), d, s);

  const Matrix x_op = nodal * disc_.trial_values_op().transpose();
  const Matrix dx_op = nodal * disc_.trial_derivs_op().transpose();
  const Eigen::Index m = x_op.cols();

  // Auxiliaries at the 𝓘ₙ nodes, one matrix (dim_p × m) per target.
  const std::size_t p_count = field_.targets.size();
  std::vector<Matrix> aux_op(p_count);
  std::optional<Matrix> x_ref;
  for (std::size_t p = 0; p < p_count; ++p) {
    const auto& target = field_.targets[p];
    if (target.constant) {
      const Vector g = target.evaluate(x0);
      aux_op[p] = g.replicate(1, m);
      continue;
    }
    if (!x_ref) {
      x_ref = nodal * disc_.trial_values_ref().transpose();
    }
    Matrix samples;
    for (Eigen::Index q = 0; q < x_ref->cols(); ++q) {
      Vector g = target.evaluate(x_ref->col(q));
      if (q == 0) {
        samples.resize(g.size(), x_ref->cols());
      }
      samples.col(q) = g;
    }
    aux_op[p] = samples * disc_.projection_ref().transpose() * disc_.test_values_op().transpose();
  }

  Matrix defect = dx_op;
  std::vector<Vector> aux(p_count);
  for (Eigen::Index q = 0; q < m; ++q) {
    for (std::size_t p = 0; p < p_count; ++p) {
      aux[p] = aux_op[p].col(q);
    }
    defect.col(q) -= dt * field_.field(x_op.col(q), aux);
  }
  const Matrix r = defect * disc_.projection_op().transpose();
  return Eigen::Map<const Vector>(r.data(), r.size());
}

Vector AuxiliaryStepper::initial_guess(const Vector& x0, double dt) const {
  const int s = disc_.stages();
  const Eigen::Index d = x0.size();
  if (!field_.predictor) {
    return x0.replicate(s, 1);
  }
  const auto& f = field_.predictor;
  const std::vector<double>& nodes = disc_.test_basis().nodes();
  const Vector k1 = f(x0);
  Vector guess(d * s);
  for (int i = 0; i < s; ++i) {
    const double h = nodes[static_cast<std::size_t>(i)] * dt;
    const Vector k2 = f(x0 + 0.5 * h * k1);
    const Vector k3 = f(x0 + 0.5 * h * k2);
    const Vector k4 = f(x0 + h * k3);
    guess.segment(i * d, d) = x0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return guess;
}

StepResult AuxiliaryStepper::step(const Vector& x0, double t_start, double dt,
                                  bool keep_trajectory) const {
  if (!(dt > 0.0)) {
    throw ParameterError("timestep must be positive");
  }
  const int s = disc_.stages();
  const auto solve = [&](const Vector& guess) {
    return newton_solve([&](const Vector& z) { return residual(x0, dt, z); }, std::nullopt, guess,
                        newton_);
  };
  NewtonResult solved;
  if (field_.predictor) {
    // Near a pole of f̃ the step equations have several roots; the predictor picks the one
    // continuing the exact flow. The constant guess is kept as a second chance.
    try {
      solved = solve(initial_guess(x0, dt));
    } catch (const std::exception&) {
      solved = solve(x0.replicate(s, 1));
    }
  } else {
    solved = solve(x0.replicate(s, 1));
  }

  const Eigen::Index d = x0.size();
  const Eigen::Map<const Matrix> stage_values(solved.solution.data(), d, s);
  StepResult out;
  out.state = x0 * disc_.end_weights()[0] + stage_values * disc_.end_weights().tail(s);
  out.newton_iterations = solved.iterations;
  out.residual_norm = solved.residual_norm;
  if (keep_trajectory) {
    out.trajectory = disc_.trajectory(x0, stage_values, t_start, dt);
  }
  return out;
}

}  // namespace avint
