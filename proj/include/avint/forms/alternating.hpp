/**
 * @file alternating.hpp
 * @brief Multilinear and alternating forms as evaluation callbacks, alternatisation, and the
 * constructive alternating form that exposes a vector field's dependence on invariant gradients.
 */
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "avint/core/types.hpp"

namespace avint {

using FormArgs = std::span<const Vector>;

/// Real-valued map of `arity` vectors in ℝ^dim, linear in each argument.
class MultilinearForm {
 public:
  using Evaluator = std::function<double(FormArgs)>;

  MultilinearForm(int arity, int dim, Evaluator eval);

  [[nodiscard]] int arity() const noexcept { return arity_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  double operator()(FormArgs args) const;

 private:
  int arity_;
  int dim_;
  Evaluator eval_;
};

/**
 * @brief Multilinear form vanishing whenever two arguments coincide.
 *
 * The optional contraction returns g with F[n₁, …, n_{k−1}, y] = yᵀg; without one, g is assembled
 * from `dim` evaluations on the standard basis.
 */
class AlternatingForm {
 public:
  using Evaluator = MultilinearForm::Evaluator;
  using Contraction = std::function<Vector(FormArgs leading)>;

  AlternatingForm(int arity, int dim, Evaluator eval, Contraction contraction = {});

  [[nodiscard]] int arity() const noexcept { return arity_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  double operator()(FormArgs args) const;
  [[nodiscard]] Vector contract(FormArgs leading) const;

 private:
  int arity_;
  int dim_;
  Evaluator eval_;
  Contraction contraction_;
};

inline constexpr int kMaxAlternatisationArity = 6;

/// (Alt G)[v₁, …, v_k] = Σ_{σ ∈ S_k} sgn σ · G[v_{σ₁}, …, v_{σ_k}]. Requires k ≤ 6.
[[nodiscard]] AlternatingForm alternatise(const MultilinearForm& form);

/**
 * @brief Minimum-norm dual basis (m_q) with ∇N_pᵀ m_q = δ_pq, i.e. M = N (NᵀN)⁻¹.
 *
 * Throws DegeneracyError if the Gram matrix NᵀN has condition number above 1e12.
 */
[[nodiscard]] std::vector<Vector> dual_basis(std::span<const Vector> gradients);

/**
 * @brief F̃ = Alt G̃ with G̃[n₁, …, n_P, y] = Π_p (n_pᵀ m_p) · (yᵀ f), so that
 * F̃[∇N₁, …, ∇N_P, y] = yᵀ f.
 *
 * Throws ConsistencyError if some ∇N_pᵀ f is not zero to 1e−10 relative, and propagates
 * DegeneracyError from dual_basis.
 */
[[nodiscard]] AlternatingForm constructive_form(const Vector& field,
                                                std::span<const Vector> gradients);

}  // namespace avint
