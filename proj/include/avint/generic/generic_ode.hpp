/**
 * @file generic_ode.hpp
 * @brief GENERIC systems ẋ = B∇E + D∇S and the energy-conserving, entropy-nondecreasing scheme.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "avint/core/integral_operator.hpp"
#include "avint/core/newton.hpp"
#include "avint/ode/auxiliary_scheme.hpp"
#include "avint/ode/conservative.hpp"

namespace avint {

/**
 * @brief GENERIC system with extended matrices B̃(x, w̃_S) and D̃(x, w̃_E).
 *
 * B̃ must be skew with w̃_SᵀB̃ = 0, and D̃ positive semidefinite with w̃_EᵀD̃ = 0, for any auxiliary
 * arguments the scheme may produce. B and D, when given, are the matrices of the continuous
 * system and should agree with B̃(x, ∇S(x)) and D̃(x, ∇E(x)).
 */
struct GenericOdeSystem {
  using ExtendedMatrix = std::function<Matrix(const Vector& x, const Vector& aux)>;

  int dim = 0;
  ScalarFn energy;
  ScalarFn entropy;
  VectorField energy_gradient;
  VectorField entropy_gradient;
  ExtendedMatrix poisson_ext;   // B̃(x, w̃_S)
  ExtendedMatrix friction_ext;  // D̃(x, w̃_E)
  MatrixFn poisson;             // optional B(x)
  MatrixFn friction;            // optional D(x)
  /// State-independent gradients skip the projection.
  bool energy_gradient_constant = false;
  bool entropy_gradient_constant = false;

  [[nodiscard]] Vector field(const Vector& x) const;
};

struct DegeneracyReport {
  double skew_defect = 0.0;        // ‖B̃ + B̃ᵀ‖∞
  double psd_min_eigenvalue = 0.0;  // of (D̃ + D̃ᵀ)/2
  double entropy_degeneracy = 0.0;  // ‖w̃_SᵀB̃‖∞
  double energy_degeneracy = 0.0;   // ‖w̃_EᵀD̃‖∞
};

[[nodiscard]] DegeneracyReport check_degeneracy(const GenericOdeSystem& system, const Vector& x,
                                                const Vector& energy_aux,
                                                const Vector& entropy_aux);

/// Random draws used to validate a system: states, and auxiliaries admissible at a state.
struct GenericSampler {
  std::function<Vector(std::mt19937_64&)> state;
  std::function<Vector(std::mt19937_64&, const Vector&)> energy_aux;
  std::function<Vector(std::mt19937_64&, const Vector&)> entropy_aux;
};

struct ValidationOptions {
  int samples = 100;
  std::uint64_t seed = 0x5eed;
  double skew_tol = 1e-10;
  double psd_tol = -1e-10;
  double degeneracy_tol = 1e-10;
  double coincidence_tol = 1e-10;
};

/**
 * @brief Randomised check of the extended-matrix requirements, plus coincidence with B and D at
 * the exact gradients when those matrices are supplied. Throws ConsistencyError on the first
 * violation.
 */
void validate_generic_system(const GenericOdeSystem& system, const GenericSampler& sampler,
                             const ValidationOptions& options = {});

/// f̃ = B̃(x, w̃_S)w̃_E + D̃(x, w̃_E)w̃_S with w̃_E, w̃_S the projections of ∇E, ∇S.
[[nodiscard]] AuxiliaryField generic_field(const GenericOdeSystem& system);

[[nodiscard]] StepResult step_generic(const GenericOdeSystem& system, const Vector& x, double dt,
                                      int stages, const IntegralOperator& op,
                                      const NewtonOptions& newton = {});

}  // namespace avint
