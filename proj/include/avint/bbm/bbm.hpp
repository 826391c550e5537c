/**
 * @file bbm.hpp
 * @brief Benjamin–Bona–Mahony equation u_t − u_xxt = −u_x − u u_x on a periodic Hermite space:
 * invariants, the energy-conserving scheme and a Gauss collocation baseline.
 */
#pragma once

#include <optional>
#include <vector>

#include "avint/bbm/hermite_space.hpp"
#include "avint/core/newton.hpp"
#include "avint/core/types.hpp"
#include "avint/ode/trajectory.hpp"

namespace avint::bbm {

struct Invariants {
  double energy = 0.0;  // H = ∫ ½u² + ⅙u³
  double mass = 0.0;    // I₁ = ∫ u
  double h1 = 0.0;      // I₂ = ∫ u² + u_x²
};

[[nodiscard]] Invariants invariants(const PeriodicHermiteSpace& space, const Vector& u);

/// Space-discrete operators shared by both steppers.
class Discretisation {
 public:
  explicit Discretisation(PeriodicHermiteSpace space);

  [[nodiscard]] const PeriodicHermiteSpace& space() const noexcept { return space_; }
  [[nodiscard]] const Matrix& gram() const noexcept { return gram_; }
  /// A = ½(D − Dᵀ): B(w, φⱼ) = (A w)ⱼ.
  [[nodiscard]] const Matrix& skew() const noexcept { return skew_; }
  [[nodiscard]] const Matrix& gram_inverse() const noexcept { return gram_inv_; }

  /// Fₖ = ∫ (u + ½u²) φₖ, the derivative of H.
  [[nodiscard]] Vector energy_load(const Vector& u) const;
  /// ∂F/∂u = ∫ (1 + u) φⱼ φₖ.
  [[nodiscard]] Matrix energy_load_jacobian(const Vector& u) const;
  /// Fluxₖ = ∫ (u + ½u²) φₖ′.
  [[nodiscard]] Vector flux_load(const Vector& u) const;
  /// ∂Flux/∂u, entry (k, j) = ∫ (1 + u) φⱼ φₖ′.
  [[nodiscard]] Matrix flux_load_jacobian(const Vector& u) const;

 private:
  PeriodicHermiteSpace space_;
  Matrix gram_;
  Matrix skew_;
  Matrix gram_inv_;
};

/// Result of one conservative step; `aux` holds w̃_H at the s Gauss nodes (2M × s).
struct ConservativeStep {
  Vector state;
  Matrix aux;
  int newton_iterations = 0;
};

/**
 * @brief Energy-conserving scheme with exact time integration:
 *   𝓘ₙ[(u̇, v)_{H¹}] = 𝓘ₙ[B(w̃, v)],  𝓘ₙ[(v_H, w̃)_{H¹}] = ∫ (u + ½u², v_H).
 *
 * w̃ is eliminated per iterate by one solve with the H¹ Gram matrix. Time integrals use
 * ⌈3s/2⌉ + 1 Gauss points, exact for every polynomial integrand that occurs.
 */
class ConservativeStepper {
 public:
  ConservativeStepper(const Discretisation& disc, int stages, NewtonOptions newton = {});

  [[nodiscard]] ConservativeStep step(const Vector& u, double dt) const;
  [[nodiscard]] Vector residual(const Vector& u0, double dt, const Vector& stages) const;
  [[nodiscard]] Matrix jacobian(const Vector& u0, double dt, const Vector& stages) const;

 private:
  const Discretisation* disc_;
  int stages_;
  NewtonOptions newton_;
  Matrix k_;          // G⁻¹ A G⁻¹
  Matrix trial_q_;    // trial basis at the time rule nodes, n_q × (s+1)
  Matrix trial_der_;  // reference-time derivative of the trial basis at the Gauss nodes, s × (s+1)
  Matrix load_weights_;  // (1/bᵢ)·ω_q·ℓᵢ(τ_q), s × n_q
  Vector end_weights_;
};

/// s-stage Gauss collocation of (u̇, v)_{H¹} = (u + ½u², v′).
class GaussStepper {
 public:
  GaussStepper(const Discretisation& disc, int stages, NewtonOptions newton = {});

  [[nodiscard]] StepOutcome step(const Vector& u, double dt) const;
  [[nodiscard]] Vector residual(const Vector& u0, double dt, const Vector& stages) const;
  [[nodiscard]] Matrix jacobian(const Vector& u0, double dt, const Vector& stages) const;

 private:
  const Discretisation* disc_;
  int stages_;
  NewtonOptions newton_;
  Matrix trial_der_;
  Vector end_weights_;
};

[[nodiscard]] ConservativeStep step_conservative(const Discretisation& disc, const Vector& u,
                                                 double dt, int stages);
[[nodiscard]] Vector step_gauss(const Discretisation& disc, const Vector& u, double dt,
                                int stages);

}  // namespace avint::bbm
