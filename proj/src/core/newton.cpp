#include "avint/core/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "avint/core/errors.hpp"

namespace avint {

namespace {

double inf_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Vector checked_residual(const ResidualFn& residual, const Vector& z, int iterations) {
  Vector r = residual(z);
  if (!r.allFinite()) {
    throw DivergenceError("Newton: non-finite residual", std::numeric_limits<double>::infinity(),
                          iterations);
  }
  return r;
}

}  // namespace

Matrix finite_difference_jacobian(const ResidualFn& residual, const Vector& z) {
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  Matrix jac;
  Vector probe = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double h = base * std::max(1.0, std::abs(z[i]));
    probe[i] = z[i] + h;
    const Vector plus = residual(probe);
    probe[i] = z[i] - h;
    const Vector minus = residual(probe);
    probe[i] = z[i];
    if (i == 0) {
      jac.resize(plus.size(), z.size());
    }
    jac.col(i) = (plus - minus) / (2.0 * h);
  }
  return jac;
}

NewtonResult newton_solve(const ResidualFn& residual, const std::optional<JacobianFn>& jacobian,
                          const Vector& guess, const NewtonOptions& options) {
  Vector z = guess;
  Vector r = checked_residual(residual, z, 0);
  double norm = inf_norm(r);
  const double target = options.tol * std::max(1.0, norm);

  for (int iter = 0;; ++iter) {
    if (norm <= target) {
      return {z, iter, norm};
    }
    if (iter >= options.max_iter) {
      throw ConvergenceError("Newton: no convergence after " + std::to_string(iter) +
                                 " iterations (residual " + std::to_string(norm) + ")",
                             norm, iter);
    }

    const Matrix jac = jacobian ? (*jacobian)(z) : finite_difference_jacobian(residual, z);
    const Eigen::PartialPivLU<Matrix> lu(jac);
    const Vector step = lu.solve(-r);
    if (!step.allFinite()) {
      throw ConvergenceError("Newton: singular Jacobian", norm, iter);
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= options.max_halvings; ++halving, lambda *= 0.5) {
      const Vector trial = z + lambda * step;
      Vector trial_r;
      try {
        trial_r = residual(trial);
      } catch (const DomainError&) {
        continue;
      }
      if (!trial_r.allFinite()) {
        if (halving == options.max_halvings) {
          throw DivergenceError("Newton: non-finite residual", norm, iter);
        }
        continue;
      }
      const double trial_norm = inf_norm(trial_r);
      if (trial_norm <= norm || halving == options.max_halvings) {
        if (trial_norm > norm) {
          throw ConvergenceError("Newton: line search could not reduce the residual", norm, iter);
        }
        z = trial;
        r = std::move(trial_r);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("Newton: every damped trial point left the model domain", norm, iter);
    }
  }
}

}  // namespace avint
