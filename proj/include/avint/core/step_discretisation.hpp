/**
 * @file step_discretisation.hpp
 * @brief Precomputed reference-time operators for one (stage count, 𝓘ₙ) pair, and the auxiliary
 * projection onto the test space.
 */
#pragma once

#include <functional>

#include "avint/core/integral_operator.hpp"
#include "avint/core/polynomial.hpp"
#include "avint/core/types.hpp"

namespace avint {

/**
 * @brief Everything a step of an s-stage scheme needs in reference time.
 *
 * The trial space uses the nodal basis at {0} ∪ c, the test space the Lagrange basis at c, where c
 * are the 𝓘ₙ rule nodes when that rule has exactly s interior nodes, and the s Gauss nodes
 * otherwise. Every "projection" matrix below maps samples of a function at some rule's nodes to
 * the nodal values of its 𝓘ₙ-orthogonal projection onto P_{s−1}:
 * 𝓘ₙ[w̃ y] = Q[g y] for all y ∈ P_{s−1}, where Q is that rule.
 */
class StepDiscretisation {
 public:
  StepDiscretisation(const IntegralOperator& op, int stages);

  [[nodiscard]] int stages() const noexcept { return stages_; }
  [[nodiscard]] const IntegralOperator& op() const noexcept { return op_; }
  [[nodiscard]] const LagrangeBasis& trial_basis() const noexcept { return trial_basis_; }
  [[nodiscard]] const LagrangeBasis& test_basis() const noexcept { return test_basis_; }

  /// 𝓘ₙ Gram matrix of the test basis on [0, 1] (s × s).
  [[nodiscard]] const Matrix& gram() const noexcept { return gram_; }

  // At the 𝓘ₙ rule nodes (m of them).
  [[nodiscard]] const Matrix& trial_values_op() const noexcept { return trial_val_op_; }      // m × (s+1)
  [[nodiscard]] const Matrix& trial_derivs_op() const noexcept { return trial_der_op_; }      // m × (s+1)
  [[nodiscard]] const Matrix& test_values_op() const noexcept { return test_val_op_; }        // m × s
  [[nodiscard]] const Matrix& projection_op() const noexcept { return proj_op_; }             // s × m

  // At the reference rule nodes (R of them).
  [[nodiscard]] const Matrix& trial_values_ref() const noexcept { return trial_val_ref_; }    // R × (s+1)
  [[nodiscard]] const Matrix& test_values_ref() const noexcept { return test_val_ref_; }      // R × s
  [[nodiscard]] const Matrix& projection_ref() const noexcept { return proj_ref_; }           // s × R

  /// Trial basis values at τ = 1.
  [[nodiscard]] const Vector& end_weights() const noexcept { return end_weights_; }

  /// Builds the trial polynomial from initial data and the s interior nodal values (d × s).
  [[nodiscard]] TimestepPolynomial trajectory(const Vector& initial, const Matrix& stage_values,
                                              double t_start, double dt) const;

 private:
  IntegralOperator op_;
  int stages_;
  LagrangeBasis trial_basis_;
  LagrangeBasis test_basis_;
  Matrix gram_;
  Matrix trial_val_op_, trial_der_op_, test_val_op_, proj_op_;
  Matrix trial_val_ref_, test_val_ref_, proj_ref_;
  Vector end_weights_;
};

/**
 * @brief Auxiliary variable: the unique w̃ ∈ P_{s−1}(Tₙ; ℝᵈ) with 𝓘ₙ[w̃ᵀy] = ∫_{Tₙ} gᵀy for all
 * test polynomials y, the right-hand integral taken with the reference rule.
 *
 * @param target g(τ) on reference time, returning a vector of fixed dimension.
 */
[[nodiscard]] TestPolynomial project_auxiliary(const IntegralOperator& op, double dt, int stages,
                                               const std::function<Vector(double)>& target);

}  // namespace avint
