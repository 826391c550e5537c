/**
 * @file engine.hpp
 * @brief Unfired C-cylinder engine exchanging heat with an isothermal environment.
 *
 * State x = (θ, ω, S₁, …, S_C, S₀); cylinder volumes V_c = V_p − cos(θ − 2πc/C) and an ideal-gas
 * closure P_c = exp(S_c/C_V)·V_c^{−γ}, T_c = P_cV_c, γ = 1 + 1/C_V.
 */
#pragma once

#include <vector>

#include "avint/core/integral_operator.hpp"
#include "avint/core/newton.hpp"
#include "avint/generic/generic_ode.hpp"

namespace avint::engine {

struct Params {
  int cylinders = 6;
  double mean_volume = 1.0 + 1.0 / 16.0;  // V_p
  double heat_capacity = 2.5;              // C_V
  double environment_temperature = 1.0;    // T₀

  [[nodiscard]] double gamma() const { return 1.0 + 1.0 / heat_capacity; }
  [[nodiscard]] int dim() const { return cylinders + 3; }
  void validate() const;
};

struct Quantities {
  std::vector<double> volume;       // V_c
  std::vector<double> pressure;     // P_c
  std::vector<double> temperature;  // T_c
  double energy = 0.0;              // ½ω² + Σ C_V T_c + T₀S₀
  double entropy = 0.0;             // Σ S_c + S₀
  Vector energy_gradient;
  Vector entropy_gradient;
  Vector rhs;
};

/// Throws DomainError when some V_c ≤ 0.
[[nodiscard]] Quantities quantities(const Params& params, const Vector& state);

/// Canonical B on (θ, ω) and the friction matrix with entries T₀/T_c, −1 and Σ T_c/T₀.
[[nodiscard]] Matrix poisson_matrix(const Params& params);
/// D with each T_c replaced by the auxiliary w̃_E component at index 2 + c.
/// Throws DomainError when one of those is ≤ 1e−8.
[[nodiscard]] Matrix friction_matrix(const Params& params, const Vector& energy_aux);

[[nodiscard]] GenericOdeSystem system(const Params& params);
/// Random states near equilibrium and admissible auxiliaries, for validate_generic_system.
[[nodiscard]] GenericSampler sampler(const Params& params);

/// θ = 0, S₀ = 0, every cylinder at T₀ (S_c = C_V ln T₀ + ln V_c), given ω.
[[nodiscard]] Vector equilibrium_state(const Params& params, double omega);

/// equilibrium_state with every S_c negated. Out of equilibrium (T_c = V_c^{−2/C_V} for T₀ = 1);
/// this start gives E(0) ≈ 67.8 and S(0) ≈ 2.3 for the default parameters.
[[nodiscard]] Vector reflected_state(const Params& params, double omega);

[[nodiscard]] StepResult step(const Params& params, const Vector& state, double dt, int stages,
                              const IntegralOperator& op, const NewtonOptions& newton = {});

}  // namespace avint::engine
