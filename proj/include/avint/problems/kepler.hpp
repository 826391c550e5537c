/**
 * @file kepler.hpp
 * @brief Two-dimensional nondimensional Kepler problem, state (x₁, x₂, v₁, v₂).
 */
#pragma once

#include "avint/forms/alternating.hpp"
#include "avint/ode/conservative.hpp"

namespace avint::kepler {

struct Invariants {
  double energy = 0.0;            // H = ½‖v‖² − 1/‖x‖
  double angular_momentum = 0.0;  // L = x₁v₂ − x₂v₁
  Eigen::Vector2d runge_lenz;     // A = v × L − x/‖x‖
  /// Orbit orientation θ = arg A.
  [[nodiscard]] double angle() const;
};

/// Throws DomainError at the origin.
[[nodiscard]] Invariants invariants(const Vector& state);
[[nodiscard]] Vector field(const Vector& state);

[[nodiscard]] Vector energy_gradient(const Vector& state);
[[nodiscard]] Vector angular_momentum_gradient(const Vector& state);
/// Gradient of A_k, k ∈ {0, 1}.
[[nodiscard]] Vector runge_lenz_gradient(const Vector& state, int k);

/**
 * @brief F̃[a₁, a₂, a₃, y] = det[y a₁ a₂ a₃] / (2LH).
 *
 * Throws DegeneracyError when |2LH| < 1e−12 (parabolic or radial orbits).
 */
[[nodiscard]] AlternatingForm form(const Vector& state);

/// Invariants H, A₁, A₂ with the determinant form above.
[[nodiscard]] ConservativeSystem conservative_system();
/// Canonical structure with Hamiltonian H.
[[nodiscard]] PoissonSystem poisson_system();

/// x = (0.4, 0), v = (0, 2): an orbit of period 2π.
[[nodiscard]] Vector standard_initial_state();

}  // namespace avint::kepler
