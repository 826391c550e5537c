/**
 * @file auxiliary_scheme.hpp
 * @brief The step solve shared by every auxiliary-variable scheme on ODEs.
 *
 * Given auxiliary targets g_p(x) and a modified field f̃(x, w̃₁, …, w̃_P), one step finds x ∈ 𝕏ₙ with
 *   𝓘ₙ[(ẋ − f̃(x, w̃))ᵀ y] = 0 for all y ∈ P_{s−1},
 * where each w̃_p is the projection of g_p(x(·)) onto P_{s−1} (see project_auxiliary).
 */
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "avint/core/newton.hpp"
#include "avint/core/polynomial.hpp"
#include "avint/core/step_discretisation.hpp"
#include "avint/core/types.hpp"

namespace avint {

struct AuxiliaryTarget {
  std::function<Vector(const Vector&)> evaluate;
  /// State-independent target: evaluated once at xₙ, its projection is itself.
  bool constant = false;
};

struct AuxiliaryField {
  std::vector<AuxiliaryTarget> targets;
  /// f̃(x, (w̃_p(τ))_p) at one time node.
  std::function<Vector(const Vector&, std::span<const Vector>)> field;
  /// Unmodified f(x). Optional; when set, the Newton guess is an RK4 predictor instead of the
  /// constant extension of xₙ, which then serves only as a fallback.
  std::function<Vector(const Vector&)> predictor;
};

struct StepResult {
  Vector state;
  int newton_iterations = 0;
  double residual_norm = 0.0;
  std::optional<TimestepPolynomial> trajectory;
};

class AuxiliaryStepper {
 public:
  AuxiliaryStepper(AuxiliaryField field, const IntegralOperator& op, int stages,
                   NewtonOptions newton = {});

  [[nodiscard]] const StepDiscretisation& discretisation() const noexcept { return disc_; }

  /// Residual in the s stage values (flattened d·s, stage-major), for tests and diagnostics.
  [[nodiscard]] Vector residual(const Vector& x0, double dt, const Vector& stages) const;

  /// Stage values of the initial guess: RK4 to each stage node if a predictor is set.
  [[nodiscard]] Vector initial_guess(const Vector& x0, double dt) const;

  /// One step from x0. Newton and domain failures propagate as exceptions.
  [[nodiscard]] StepResult step(const Vector& x0, double t_start, double dt,
                                bool keep_trajectory = false) const;

 private:
  AuxiliaryField field_;
  StepDiscretisation disc_;
  NewtonOptions newton_;
};

}  // namespace avint
