#include "avint/core/polynomial.hpp"

#include <cmath>
#include <utility>

#include "avint/core/errors.hpp"

namespace avint {

LagrangeBasis::LagrangeBasis(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) {
    throw ParameterError("Lagrange basis needs at least one node");
  }
  const int n = size();
  denominators_.assign(n, 1.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) {
        continue;
      }
      const double gap = nodes_[j] - nodes_[k];
      if (gap == 0.0) {
        throw ParameterError("Lagrange basis nodes must be distinct");
      }
      denominators_[j] *= gap;
    }
  }
}

Vector LagrangeBasis::values(double tau) const {
  const int n = size();
  Vector out(n);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k != j) {
        prod *= tau - nodes_[k];
      }
    }
    out[j] = prod / denominators_[j];
  }
  return out;
}

Vector LagrangeBasis::derivatives(double tau) const {
  const int n = size();
  Vector out = Vector::Zero(n);
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) {
        continue;
      }
      double prod = 1.0;
      for (int k = 0; k < n; ++k) {
        if (k != j && k != m) {
          prod *= tau - nodes_[k];
        }
      }
      sum += prod;
    }
    out[j] = sum / denominators_[j];
  }
  return out;
}

TimestepPolynomial::TimestepPolynomial(LagrangeBasis basis, Matrix nodal_values, double t_start,
                                       double dt)
    : basis_(std::move(basis)), values_(std::move(nodal_values)), t_start_(t_start), dt_(dt) {
  if (values_.cols() != basis_.size()) {
    throw ParameterError("trial polynomial: value matrix does not match the basis size");
  }
  if (basis_.nodes().front() != 0.0) {
    throw ParameterError("trial polynomial basis must start at the step's initial time");
  }
}

Vector TimestepPolynomial::value(double tau) const { return values_ * basis_.values(tau); }

Vector TimestepPolynomial::time_derivative(double tau) const {
  return values_ * basis_.derivatives(tau) / dt_;
}

TestPolynomial::TestPolynomial(LagrangeBasis basis, Matrix nodal_values)
    : basis_(std::move(basis)), values_(std::move(nodal_values)) {
  if (values_.cols() != basis_.size()) {
    throw ParameterError("test polynomial: value matrix does not match the basis size");
  }
}

Vector TestPolynomial::value(double tau) const { return values_ * basis_.values(tau); }

}  // namespace avint
