/**
 * @file hermite_space.hpp
 * @brief C¹ cubic Hermite finite elements on a uniform periodic mesh of [a, b).
 *
 * Node k sits at a + k·h and owns two coefficients: the value (index 2k) and the x-derivative
 * (index 2k + 1). Node M is identified with node 0.
 */
#pragma once

#include <array>
#include <functional>

#include "avint/core/quadrature.hpp"
#include "avint/core/types.hpp"

namespace avint {

class PeriodicHermiteSpace {
 public:
  /// Five Gauss points per cell, exact up to degree 9 (the cubic energy density times a shape).
  static constexpr int kCellQuadraturePoints = 5;

  PeriodicHermiteSpace(double a, double b, int cells);

  [[nodiscard]] double left() const noexcept { return a_; }
  [[nodiscard]] double right() const noexcept { return b_; }
  [[nodiscard]] double length() const noexcept { return b_ - a_; }
  [[nodiscard]] int cells() const noexcept { return cells_; }
  [[nodiscard]] double cell_width() const noexcept { return h_; }
  [[nodiscard]] int dofs() const noexcept { return 2 * cells_; }
  [[nodiscard]] const QuadratureRule& cell_rule() const noexcept { return rule_; }

  /// Global indices of the four local shape functions of cell e.
  [[nodiscard]] std::array<int, 4> cell_dofs(int e) const;
  /// Shape functions of one cell at local coordinate ξ ∈ [0, 1], and their x-derivatives.
  [[nodiscard]] std::array<double, 4> shape(double xi) const;
  [[nodiscard]] std::array<double, 4> shape_dx(double xi) const;
  [[nodiscard]] std::array<double, 4> shape_dxx(double xi) const;

  /// Value and derivative of the function with coefficients c at x (wrapped periodically).
  [[nodiscard]] double evaluate(const Vector& c, double x) const;
  [[nodiscard]] double evaluate_dx(const Vector& c, double x) const;

  /// Nodal Hermite interpolant of (f, f′).
  [[nodiscard]] Vector interpolate(const std::function<double(double)>& f,
                                   const std::function<double(double)>& df) const;

  /// Coefficients of the constant function 1.
  [[nodiscard]] Vector constant_one() const;

  /// Integrates g(x, u, u_x) over the domain with the cell rule.
  [[nodiscard]] double integrate(const Vector& c,
                                 const std::function<double(double, double, double)>& g) const;

 private:
  // Cell index and local coordinate of a point, after periodic wrapping.
  [[nodiscard]] std::pair<int, double> locate(double x) const;

  double a_;
  double b_;
  int cells_;
  double h_;
  QuadratureRule rule_;
};

/// Gᵢⱼ = ∫ φᵢφⱼ + φᵢ′φⱼ′.
[[nodiscard]] Matrix assemble_h1_gram(const PeriodicHermiteSpace& space);
/// Dᵢⱼ = (φᵢ′, φⱼ)_{H¹} = ∫ φᵢ′φⱼ + φᵢ″φⱼ′.
[[nodiscard]] Matrix assemble_derivative_pairing(const PeriodicHermiteSpace& space);

}  // namespace avint
