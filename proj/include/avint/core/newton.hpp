/**
 * @file newton.hpp
 * @brief Damped Newton iteration shared by every implicit scheme.
 */
#pragma once

#include <functional>
#include <optional>

#include "avint/core/types.hpp"

namespace avint {

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 50;
  int max_halvings = 30;
};

struct NewtonResult {
  Vector solution;
  int iterations = 0;
  double residual_norm = 0.0;
};

/// Central-difference Jacobian, step cbrt(ε)·max(1, |zᵢ|) per coordinate.
[[nodiscard]] Matrix finite_difference_jacobian(const ResidualFn& residual, const Vector& z);

/**
 * @brief Solves residual(z) = 0 from `guess`.
 *
 * Stops once ‖r(z)‖∞ ≤ tol·max(1, ‖r(guess)‖∞). Each Newton step is halved (up to
 * `max_halvings` times) while the trial residual's max-norm exceeds the current one or the residual
 * throws DomainError at the trial point.
 *
 * Throws ConvergenceError when max_iter is exhausted, the Jacobian is singular or the line search
 * stalls, and DivergenceError when the residual is non-finite.
 */
[[nodiscard]] NewtonResult newton_solve(const ResidualFn& residual,
                                        const std::optional<JacobianFn>& jacobian,
                                        const Vector& guess, const NewtonOptions& options = {});

}  // namespace avint
