/**
 * @file integral_operator.hpp
 * @brief The linear functional approximating ∫ over one timestep.
 */
#pragma once

#include <functional>

#include "avint/core/quadrature.hpp"

namespace avint {

/// Stages of the default high-order rule used for right-hand-side integrals.
inline constexpr int kDefaultReferenceStages = 12;

/**
 * @brief Sign-preserving approximation 𝓘ₙ of the integral over a step, plus the reference rule
 * used wherever the schemes need ∫ itself (auxiliary projections, right-hand sides).
 *
 * Two flavours exist. A stage quadrature applies a user or Gauss rule. The exact kind stands in
 * for the true integral and is realised by the reference rule, which is exact for polynomial
 * integrands up to degree 2·(reference stages) − 1.
 */
class IntegralOperator {
 public:
  enum class Kind { kStageQuadrature, kExact };

  [[nodiscard]] static IntegralOperator stage_quadrature(
      QuadratureRule rule, QuadratureRule reference = gauss_legendre_rule(kDefaultReferenceStages));
  [[nodiscard]] static IntegralOperator gauss(
      int stages, int reference_stages = kDefaultReferenceStages);
  [[nodiscard]] static IntegralOperator exact(
      QuadratureRule reference = gauss_legendre_rule(kDefaultReferenceStages));

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// Rule realising 𝓘ₙ on [0, 1] (the stage rule, or the reference rule for the exact kind).
  [[nodiscard]] const QuadratureRule& rule() const noexcept { return rule_; }
  [[nodiscard]] const QuadratureRule& reference() const noexcept { return reference_; }

  /// 𝓘ₙ[φ] for a step of length dt, with φ given on reference time τ ∈ [0, 1].
  [[nodiscard]] double apply(double dt, const std::function<double(double)>& integrand) const;
  /// ∫_{Tₙ} φ evaluated with the reference rule.
  [[nodiscard]] double integrate_reference(double dt,
                                           const std::function<double(double)>& integrand) const;

 private:
  IntegralOperator(Kind kind, QuadratureRule rule, QuadratureRule reference);

  Kind kind_;
  QuadratureRule rule_;
  QuadratureRule reference_;
};

}  // namespace avint
