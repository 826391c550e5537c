/**
 * @file conservative.hpp
 * @brief Systems with P invariants and the integrator that conserves all of them, plus the
 * single-invariant Poisson special case.
 */
#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "avint/core/integral_operator.hpp"
#include "avint/core/newton.hpp"
#include "avint/forms/alternating.hpp"
#include "avint/ode/auxiliary_scheme.hpp"

namespace avint {

using VectorField = std::function<Vector(const Vector&)>;
using ScalarFn = std::function<double(const Vector&)>;
using MatrixFn = std::function<Matrix(const Vector&)>;

struct Invariant {
  std::string name;
  ScalarFn value;
  VectorField gradient;
};

/**
 * @brief ẋ = f(x) with invariants N₁, …, N_P and an alternating form F̃(x) of arity P+1 such that
 * F̃(x)[∇N₁(x), …, ∇N_P(x), y] = yᵀf(x).
 *
 * Without a form factory the constructive form is built pointwise from f and the gradients.
 */
class ConservativeSystem {
 public:
  using FormFactory = std::function<AlternatingForm(const Vector&)>;

  ConservativeSystem(int dim, VectorField field, std::vector<Invariant> invariants,
                     FormFactory form = {});

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<Invariant>& invariants() const noexcept { return invariants_; }
  [[nodiscard]] Vector field(const Vector& x) const { return field_(x); }
  [[nodiscard]] AlternatingForm form(const Vector& x) const;
  [[nodiscard]] bool has_custom_form() const noexcept { return static_cast<bool>(form_); }

  /// max_p |∇N_p(x)ᵀf(x)| / max(1, ‖∇N_p‖‖f‖) over the given states.
  [[nodiscard]] double conservation_defect(const std::vector<Vector>& states) const;

 private:
  int dim_;
  VectorField field_;
  std::vector<Invariant> invariants_;
  FormFactory form_;
};

/// ẋ = B(x)∇H(x) with skew B.
struct PoissonSystem {
  int dim = 0;
  MatrixFn structure;
  ScalarFn hamiltonian;
  VectorField gradient;

  [[nodiscard]] Vector field(const Vector& x) const { return structure(x) * gradient(x); }
  /// max ‖B + Bᵀ‖∞ over the given states.
  [[nodiscard]] double skew_defect(const std::vector<Vector>& states) const;
};

/// Modified field f̃ = F̃(x)[w̃₁, …, w̃_P, ·] with each w̃_p the projection of ∇N_p.
[[nodiscard]] AuxiliaryField conservative_field(const ConservativeSystem& system);
/// Modified field f̃ = B(x)w̃ with w̃ the projection of ∇H.
[[nodiscard]] AuxiliaryField poisson_field(const PoissonSystem& system);

[[nodiscard]] StepResult step_conservative(const ConservativeSystem& system, const Vector& x,
                                           double dt, int stages, const IntegralOperator& op,
                                           const NewtonOptions& newton = {});
[[nodiscard]] Vector step_poisson_conservative(const PoissonSystem& system, const Vector& x,
                                               double dt, int stages, const IntegralOperator& op,
                                               const NewtonOptions& newton = {});

}  // namespace avint
