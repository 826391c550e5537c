/**
 * @file quadrature.hpp
 * @brief Quadrature rules on the reference interval [0, 1].
 */
#pragma once

#include <cstddef>
#include <vector>

namespace avint {

/// Positive-weight quadrature rule on [0, 1] with strictly increasing nodes and weights summing to one.
class QuadratureRule {
 public:
  /// Validates and stores the rule. Throws ParameterError if any invariant fails.
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

  /// Σ wᵢ φ(τᵢ) on the reference interval.
  template <class F>
  [[nodiscard]] double integrate(F&& phi) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      sum += weights_[i] * phi(nodes_[i]);
    }
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr int kMaxGaussStages = 64;

/// s-point Gauss–Legendre rule mapped to [0, 1]; exact for degree ≤ 2s − 1. Requires 1 ≤ s ≤ kMaxGaussStages.
[[nodiscard]] QuadratureRule gauss_legendre_rule(int stages);

}  // namespace avint
