/**
 * @file kovalevskaya.hpp
 * @brief Kovalevskaya top, state (n₁, n₂, n₃, l₁, l₂, l₃) with J = diag(1, 1, 2).
 */
#pragma once

#include "avint/forms/alternating.hpp"
#include "avint/ode/conservative.hpp"

namespace avint::kovalevskaya {

struct Invariants {
  double energy = 0.0;        // H = n·e₁ + ½ lᵀJl
  double norm_squared = 0.0;  // ‖n‖²
  double momentum = 0.0;      // L = l·n
  double kovalevskaya = 0.0;  // K = ξ_r² + ξ_i²
};

[[nodiscard]] Invariants invariants(const Vector& state);
[[nodiscard]] Vector field(const Vector& state);

[[nodiscard]] Vector energy_gradient(const Vector& state);
[[nodiscard]] Vector kovalevskaya_gradient(const Vector& state);
[[nodiscard]] Vector momentum_gradient(const Vector& state);
/// Gradient of ½‖n‖², i.e. (n, 0).
[[nodiscard]] Vector half_norm_gradient(const Vector& state);

/// G̃[v₁, …, v₅] = det[b₁ b₂ b₃]·(n·a₄)·(v₅ᵀf), with vᵢ = (aᵢ, bᵢ).
[[nodiscard]] MultilinearForm seed_form(const Vector& state);

/**
 * @brief F̃ = Alt G̃ / (6 det[Jl, ∇_lK, n] ‖n‖²), evaluated through the factorised alternatisation
 * (20 terms rather than 120).
 *
 * Throws DegeneracyError when the prefactor is below 1e−12 relative to its natural scale.
 */
[[nodiscard]] AlternatingForm form(const Vector& state);

/// Invariants ordered H, K, L, ½‖n‖² to match the form.
[[nodiscard]] ConservativeSystem conservative_system();

/// n = (0.8, 0.6, 0), l = (2, 0, 0.2).
[[nodiscard]] Vector standard_initial_state();

}  // namespace avint::kovalevskaya
