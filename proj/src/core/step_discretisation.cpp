#include "avint/core/step_discretisation.hpp"

#include <string>
#include <utility>
#include <vector>

#include "avint/core/errors.hpp"

namespace avint {

namespace {

std::vector<double> test_nodes_for(const IntegralOperator& op, int stages) {
  const auto& rule = op.rule();
  const bool usable = op.kind() == IntegralOperator::Kind::kStageQuadrature &&
                      static_cast<int>(rule.size()) == stages && rule.nodes().front() > 0.0;
  if (usable) {
    return rule.nodes();
  }
  return gauss_legendre_rule(stages).nodes();
}

std::vector<double> with_origin(std::vector<double> nodes) {
  nodes.insert(nodes.begin(), 0.0);
  return nodes;
}

}  // namespace

StepDiscretisation::StepDiscretisation(const IntegralOperator& op, int stages)
    : op_(op),
      stages_(stages),
      trial_basis_(with_origin(test_nodes_for(op, stages > 0 ? stages : 1))),
      test_basis_(test_nodes_for(op, stages > 0 ? stages : 1)) {
  if (stages < 1) {
    throw ParameterError("stage count must be at least 1");
  }
  const auto& rule = op.rule();
  const auto& ref = op.reference();
  if (static_cast<int>(rule.size()) < stages) {
    throw ParameterError("integral operator with " + std::to_string(rule.size()) +
                         " nodes cannot define a norm on polynomials of degree " +
                         std::to_string(stages - 1));
  }
  const int s = stages;
  const int m = static_cast<int>(rule.size());
  const int r = static_cast<int>(ref.size());

  trial_val_op_.resize(m, s + 1);
  trial_der_op_.resize(m, s + 1);
  test_val_op_.resize(m, s);
  Matrix weighted_op(s, m);
  for (int q = 0; q < m; ++q) {
    const double tau = rule.nodes()[q];
    trial_val_op_.row(q) = trial_basis_.values(tau).transpose();
    trial_der_op_.row(q) = trial_basis_.derivatives(tau).transpose();
    test_val_op_.row(q) = test_basis_.values(tau).transpose();
    weighted_op.col(q) = rule.weights()[q] * test_val_op_.row(q).transpose();
  }
  gram_ = weighted_op * test_val_op_;

  Eigen::LLT<Matrix> chol(gram_);
  if (chol.info() != Eigen::Success) {
    throw ParameterError("integral operator does not induce a norm on the test space");
  }
  proj_op_ = chol.solve(weighted_op);

  trial_val_ref_.resize(r, s + 1);
  test_val_ref_.resize(r, s);
  Matrix weighted_ref(s, r);
  for (int q = 0; q < r; ++q) {
    const double tau = ref.nodes()[q];
    trial_val_ref_.row(q) = trial_basis_.values(tau).transpose();
    test_val_ref_.row(q) = test_basis_.values(tau).transpose();
    weighted_ref.col(q) = ref.weights()[q] * test_val_ref_.row(q).transpose();
  }
  proj_ref_ = chol.solve(weighted_ref);
  end_weights_ = trial_basis_.values(1.0);
}

TimestepPolynomial StepDiscretisation::trajectory(const Vector& initial, const Matrix& stage_values,
                                                  double t_start, double dt) const {
  Matrix nodal(initial.size(), stages_ + 1);
  nodal.col(0) = initial;
  nodal.rightCols(stages_) = stage_values;
  return TimestepPolynomial(trial_basis_, std::move(nodal), t_start, dt);
}

TestPolynomial project_auxiliary(const IntegralOperator& op, double dt, int stages,
                                 const std::function<Vector(double)>& target) {
  if (!(dt > 0.0)) {
    throw ParameterError("timestep must be positive");
  }
  const StepDiscretisation disc(op, stages);
  const auto& ref = op.reference();
  Matrix samples;
  for (std::size_t q = 0; q < ref.size(); ++q) {
    Vector g = target(ref.nodes()[q]);
    if (q == 0) {
      samples.resize(g.size(), static_cast<Eigen::Index>(ref.size()));
    }
    samples.col(static_cast<Eigen::Index>(q)) = g;
  }
  // Δt scales both sides of the defining identity and cancels.
  Matrix nodal = samples * disc.projection_ref().transpose();
  return TestPolynomial(disc.test_basis(), std::move(nodal));
}

}  // namespace avint
