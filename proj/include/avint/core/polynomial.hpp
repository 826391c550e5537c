/**
 * @file polynomial.hpp
 * @brief Nodal polynomial bases in reference time and the per-step trial/test polynomials.
 */
#pragma once

#include <vector>

#include "avint/core/types.hpp"

namespace avint {

/// Lagrange basis on distinct nodes in [0, 1].
class LagrangeBasis {
 public:
  explicit LagrangeBasis(std::vector<double> nodes);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }

  /// (ℓ₀(τ), …, ℓₙ₋₁(τ)).
  [[nodiscard]] Vector values(double tau) const;
  /// (ℓ₀′(τ), …, ℓₙ₋₁′(τ)) with respect to reference time.
  [[nodiscard]] Vector derivatives(double tau) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> denominators_;
};

/**
 * @brief Degree-s trial polynomial on one step, stored by its values at {0} ∪ {c₁, …, c_s}.
 *
 * Column 0 of the value matrix is the known initial data.
 */
class TimestepPolynomial {
 public:
  TimestepPolynomial(LagrangeBasis basis, Matrix nodal_values, double t_start, double dt);

  [[nodiscard]] int degree() const noexcept { return basis_.size() - 1; }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(values_.rows()); }
  [[nodiscard]] double t_start() const noexcept { return t_start_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] const Matrix& nodal_values() const noexcept { return values_; }

  /// x at reference time τ ∈ [0, 1].
  [[nodiscard]] Vector value(double tau) const;
  /// dx/dt (physical time) at reference time τ; a degree-(s−1) polynomial.
  [[nodiscard]] Vector time_derivative(double tau) const;
  [[nodiscard]] Vector initial_value() const { return values_.col(0); }
  [[nodiscard]] Vector end_value() const { return value(1.0); }

 private:
  LagrangeBasis basis_;
  Matrix values_;
  double t_start_;
  double dt_;
};

/// Degree-(s−1) test-space polynomial, stored by its values at the s basis nodes.
class TestPolynomial {
 public:
  TestPolynomial(LagrangeBasis basis, Matrix nodal_values);

  [[nodiscard]] int degree() const noexcept { return basis_.size() - 1; }
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(values_.rows()); }
  [[nodiscard]] const Matrix& nodal_values() const noexcept { return values_; }
  [[nodiscard]] const LagrangeBasis& basis() const noexcept { return basis_; }
  [[nodiscard]] Vector value(double tau) const;

 private:
  LagrangeBasis basis_;
  Matrix values_;
};

}  // namespace avint
