#include "avint/core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "avint/core/errors.hpp"

namespace avint {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw ParameterError("quadrature rule needs matching, nonempty node and weight lists");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] >= 0.0 && nodes_[i] <= 1.0)) {
      throw ParameterError("quadrature node outside [0, 1]");
    }
    if (!(weights_[i] > 0.0)) {
      throw ParameterError("quadrature weights must be positive");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw ParameterError("quadrature nodes must be strictly increasing");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw ParameterError("quadrature weights must sum to 1 on the reference interval");
  }
}

namespace {

/// Returns (P_n(x), P_n'(x)) via the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre_rule(int stages) {
  if (stages < 1 || stages > kMaxGaussStages) {
    throw ParameterError("Gauss-Legendre stage count must lie in [1, " +
                         std::to_string(kMaxGaussStages) + "], got " + std::to_string(stages));
  }
  const int n = stages;
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  for (int i = 0; i < n; ++i) {
    // Roots come out in decreasing order from this initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double dp = legendre_with_derivative(n, x).second;
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  // Strip the last few ulps so that the unit-sum invariant holds tightly.
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) {
    w /= total;
  }
  return QuadratureRule(std::move(nodes), std::move(weights));
}

}  // namespace avint
