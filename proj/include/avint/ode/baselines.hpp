/**
 * @file baselines.hpp
 * @brief Standard integrators used for comparison: implicit midpoint, Gauss collocation and the
 * mean-value discrete gradient method.
 */
#pragma once

#include "avint/core/integral_operator.hpp"
#include "avint/core/newton.hpp"
#include "avint/ode/auxiliary_scheme.hpp"
#include "avint/ode/conservative.hpp"

namespace avint {

/// x₊ = xₙ + Δt·f((xₙ + x₊)/2).
[[nodiscard]] Vector step_implicit_midpoint(const VectorField& f, const Vector& x, double dt,
                                            const NewtonOptions& newton = {});

/// s-stage Gauss collocation; s = 1 is implicit midpoint.
[[nodiscard]] AuxiliaryStepper gauss_stepper(const VectorField& f, int stages,
                                             const NewtonOptions& newton = {});
[[nodiscard]] Vector step_gauss(const VectorField& f, const Vector& x, double dt, int stages,
                                const NewtonOptions& newton = {});

/**
 * @brief x₊ = xₙ + Δt·B·∫₀¹ ∇H(ξx₊ + (1−ξ)xₙ) dξ for constant skew B, the ξ-integral taken with
 * `reference`.
 */
[[nodiscard]] Vector step_mean_value_dg(const PoissonSystem& system, const Vector& x, double dt,
                                        const QuadratureRule& reference =
                                            gauss_legendre_rule(kDefaultReferenceStages),
                                        const NewtonOptions& newton = {});

}  // namespace avint
