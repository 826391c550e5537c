#include "avint/bbm/bbm.hpp"

#include <cmath>
#include <utility>

#include "avint/core/errors.hpp"
#include "avint/core/polynomial.hpp"
#include "avint/core/quadrature.hpp"

namespace avint::bbm {

namespace {

// Calls visit(dofs, weight, φ, φ′, u) at every spatial quadrature point.
template <typename Visit>
void for_each_point(const PeriodicHermiteSpace& space, const Vector& u, Visit&& visit) {
  const auto& rule = space.cell_rule();
  const double h = space.cell_width();
  for (int e = 0; e < space.cells(); ++e) {
    const auto dofs = space.cell_dofs(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto phi = space.shape(rule.nodes()[q]);
      const auto dphi = space.shape_dx(rule.nodes()[q]);
      double value = 0.0;
      for (int k = 0; k < 4; ++k) {
        value += u[dofs[k]] * phi[k];
      }
      visit(dofs, rule.weights()[q] * h, phi, dphi, value);
    }
  }
}

std::vector<double> with_origin(std::vector<double> nodes) {
  nodes.insert(nodes.begin(), 0.0);
  return nodes;
}

Matrix nodal_matrix(const Vector& u0, const Vector& stages, int s) {
  const Eigen::Index n = u0.size();
  Matrix nodal(n, s + 1);
  nodal.col(0) = u0;
  nodal.rightCols(s) = Eigen::Map<const Matrix>(stages.data(), n, s);
  return nodal;
}

}  // namespace

Invariants invariants(const PeriodicHermiteSpace& space, const Vector& u) {
  Invariants out;
  out.energy = space.integrate(u, [](double, double v, double) { return 0.5 * v * v + v * v * v / 6.0; });
  out.mass = space.integrate(u, [](double, double v, double) { return v; });
  out.h1 = space.integrate(u, [](double, double v, double vx) { return v * v + vx * vx; });
  return out;
}

Discretisation::Discretisation(PeriodicHermiteSpace space)
    : space_(std::move(space)), gram_(assemble_h1_gram(space_)) {
  const Matrix d = assemble_derivative_pairing(space_);
  skew_ = 0.5 * (d - d.transpose());
  gram_inv_ = gram_.llt().solve(Matrix::Identity(gram_.rows(), gram_.cols()));
}

Vector Discretisation::energy_load(const Vector& u) const {
  Vector f = Vector::Zero(space_.dofs());
  for_each_point(space_, u, [&](const auto& dofs, double w, const auto& phi, const auto&, double v) {
    const double g = w * (v + 0.5 * v * v);
    for (int k = 0; k < 4; ++k) {
      f[dofs[k]] += g * phi[k];
    }
  });
  return f;
}

Matrix Discretisation::energy_load_jacobian(const Vector& u) const {
  Matrix m = Matrix::Zero(space_.dofs(), space_.dofs());
  for_each_point(space_, u, [&](const auto& dofs, double w, const auto& phi, const auto&, double v) {
    const double g = w * (1.0 + v);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        m(dofs[i], dofs[j]) += g * phi[i] * phi[j];
      }
    }
  });
  return m;
}

Vector Discretisation::flux_load(const Vector& u) const {
  Vector f = Vector::Zero(space_.dofs());
  for_each_point(space_, u, [&](const auto& dofs, double w, const auto&, const auto& dphi, double v) {
    const double g = w * (v + 0.5 * v * v);
    for (int k = 0; k < 4; ++k) {
      f[dofs[k]] += g * dphi[k];
    }
  });
  return f;
}

Matrix Discretisation::flux_load_jacobian(const Vector& u) const {
  Matrix m = Matrix::Zero(space_.dofs(), space_.dofs());
  for_each_point(space_, u,
                 [&](const auto& dofs, double w, const auto& phi, const auto& dphi, double v) {
                   const double g = w * (1.0 + v);
                   for (int k = 0; k < 4; ++k) {
                     for (int j = 0; j < 4; ++j) {
                       m(dofs[k], dofs[j]) += g * dphi[k] * phi[j];
                     }
                   }
                 });
  return m;
}

ConservativeStepper::ConservativeStepper(const Discretisation& disc, int stages,
                                         NewtonOptions newton)
    : disc_(&disc), stages_(stages), newton_(newton) {
  if (stages < 1) {
    throw ParameterError("stage count must be at least 1");
  }
  const int s = stages;
  const QuadratureRule gauss = gauss_legendre_rule(s);
  const QuadratureRule time_rule = gauss_legendre_rule((3 * s + 1) / 2 + 1);
  const LagrangeBasis trial(with_origin(gauss.nodes()));
  const LagrangeBasis test(gauss.nodes());
  const int nq = static_cast<int>(time_rule.size());

  trial_q_.resize(nq, s + 1);
  load_weights_.resize(s, nq);
  for (int q = 0; q < nq; ++q) {
    const double tau = time_rule.nodes()[q];
    trial_q_.row(q) = trial.values(tau).transpose();
    const Vector ell = test.values(tau);
    for (int i = 0; i < s; ++i) {
      load_weights_(i, q) = time_rule.weights()[q] * ell[i] / gauss.weights()[i];
    }
  }
  trial_der_.resize(s, s + 1);
  for (int i = 0; i < s; ++i) {
    trial_der_.row(i) = trial.derivatives(gauss.nodes()[i]).transpose();
  }
  end_weights_ = trial.values(1.0);
  k_ = disc.gram_inverse() * disc.skew() * disc.gram_inverse();
}

Vector ConservativeStepper::residual(const Vector& u0, double dt, const Vector& stages) const {
  const int s = stages_;
  const Matrix nodal = nodal_matrix(u0, stages, s);
  const Matrix uq = nodal * trial_q_.transpose();
  Matrix loads(u0.size(), uq.cols());
  for (Eigen::Index q = 0; q < uq.cols(); ++q) {
    loads.col(q) = disc_->energy_load(uq.col(q));
  }
  const Matrix projected = loads * load_weights_.transpose();  // G·w̃ at the Gauss nodes
  const Matrix r = nodal * trial_der_.transpose() - dt * k_ * projected;
  return Eigen::Map<const Vector>(r.data(), r.size());
}

Matrix ConservativeStepper::jacobian(const Vector& u0, double dt, const Vector& stages) const {
  const int s = stages_;
  const Eigen::Index n = u0.size();
  const Matrix nodal = nodal_matrix(u0, stages, s);
  const Matrix uq = nodal * trial_q_.transpose();
  std::vector<Matrix> load_jac;
  load_jac.reserve(uq.cols());
  for (Eigen::Index q = 0; q < uq.cols(); ++q) {
    load_jac.push_back(disc_->energy_load_jacobian(uq.col(q)));
  }
  Matrix jac(n * s, n * s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      Matrix sum = Matrix::Zero(n, n);
      for (Eigen::Index q = 0; q < uq.cols(); ++q) {
        sum += load_weights_(i, q) * trial_q_(q, j + 1) * load_jac[q];
      }
      jac.block(i * n, j * n, n, n) = -dt * k_ * sum;
      jac.block(i * n, j * n, n, n).diagonal().array() += trial_der_(i, j + 1);
    }
  }
  return jac;
}

ConservativeStep ConservativeStepper::step(const Vector& u, double dt) const {
  if (!(dt > 0.0)) {
    throw ParameterError("timestep must be positive");
  }
  const int s = stages_;
  const NewtonResult solved = newton_solve(
      [&](const Vector& z) { return residual(u, dt, z); },
      JacobianFn([&](const Vector& z) { return jacobian(u, dt, z); }), u.replicate(s, 1), newton_);
  const Matrix nodal = nodal_matrix(u, solved.solution, s);
  ConservativeStep out;
  out.state = nodal * end_weights_;
  const Matrix uq = nodal * trial_q_.transpose();
  Matrix loads(u.size(), uq.cols());
  for (Eigen::Index q = 0; q < uq.cols(); ++q) {
    loads.col(q) = disc_->energy_load(uq.col(q));
  }
  out.aux = disc_->gram_inverse() * (loads * load_weights_.transpose());
  out.newton_iterations = solved.iterations;
  return out;
}

GaussStepper::GaussStepper(const Discretisation& disc, int stages, NewtonOptions newton)
    : disc_(&disc), stages_(stages), newton_(newton) {
  if (stages < 1) {
    throw ParameterError("stage count must be at least 1");
  }
  const QuadratureRule gauss = gauss_legendre_rule(stages);
  const LagrangeBasis trial(with_origin(gauss.nodes()));
  trial_der_.resize(stages, stages + 1);
  for (int i = 0; i < stages; ++i) {
    trial_der_.row(i) = trial.derivatives(gauss.nodes()[i]).transpose();
  }
  end_weights_ = trial.values(1.0);
}

Vector GaussStepper::residual(const Vector& u0, double dt, const Vector& stages) const {
  const int s = stages_;
  const Matrix nodal = nodal_matrix(u0, stages, s);
  Matrix flux(u0.size(), s);
  for (int i = 0; i < s; ++i) {
    flux.col(i) = disc_->flux_load(nodal.col(i + 1));
  }
  const Matrix r = nodal * trial_der_.transpose() - dt * disc_->gram_inverse() * flux;
  return Eigen::Map<const Vector>(r.data(), r.size());
}

Matrix GaussStepper::jacobian(const Vector& u0, double dt, const Vector& stages) const {
  const int s = stages_;
  const Eigen::Index n = u0.size();
  const Matrix nodal = nodal_matrix(u0, stages, s);
  Matrix jac = Matrix::Zero(n * s, n * s);
  for (int i = 0; i < s; ++i) {
    jac.block(i * n, i * n, n, n) =
        -dt * disc_->gram_inverse() * disc_->flux_load_jacobian(nodal.col(i + 1));
    for (int j = 0; j < s; ++j) {
      jac.block(i * n, j * n, n, n).diagonal().array() += trial_der_(i, j + 1);
    }
  }
  return jac;
}

StepOutcome GaussStepper::step(const Vector& u, double dt) const {
  if (!(dt > 0.0)) {
    throw ParameterError("timestep must be positive");
  }
  const int s = stages_;
  const NewtonResult solved = newton_solve(
      [&](const Vector& z) { return residual(u, dt, z); },
      JacobianFn([&](const Vector& z) { return jacobian(u, dt, z); }), u.replicate(s, 1), newton_);
  return {nodal_matrix(u, solved.solution, s) * end_weights_, solved.iterations};
}

ConservativeStep step_conservative(const Discretisation& disc, const Vector& u, double dt,
                                   int stages) {
  return ConservativeStepper(disc, stages).step(u, dt);
}

Vector step_gauss(const Discretisation& disc, const Vector& u, double dt, int stages) {
  return GaussStepper(disc, stages).step(u, dt).state;
}

}  // namespace avint::bbm
