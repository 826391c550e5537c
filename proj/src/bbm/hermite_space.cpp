#include "avint/bbm/hermite_space.hpp"

#include <cmath>

#include "avint/core/errors.hpp"

namespace avint {

PeriodicHermiteSpace::PeriodicHermiteSpace(double a, double b, int cells)
    : a_(a), b_(b), cells_(cells), h_((b - a) / cells),
      rule_(gauss_legendre_rule(kCellQuadraturePoints)) {
  if (!(b > a)) {
    throw ParameterError("Hermite space needs a < b");
  }
  if (cells < 3) {
    throw ParameterError("Hermite space needs at least 3 cells");
  }
}

std::array<int, 4> PeriodicHermiteSpace::cell_dofs(int e) const {
  const int next = (e + 1) % cells_;
  return {2 * e, 2 * e + 1, 2 * next, 2 * next + 1};
}

std::array<double, 4> PeriodicHermiteSpace::shape(double xi) const {
  const double x2 = xi * xi;
  const double x3 = x2 * xi;
  return {1.0 - 3.0 * x2 + 2.0 * x3, h_ * (xi - 2.0 * x2 + x3), 3.0 * x2 - 2.0 * x3,
          h_ * (x3 - x2)};
}

std::array<double, 4> PeriodicHermiteSpace::shape_dx(double xi) const {
  const double x2 = xi * xi;
  return {(-6.0 * xi + 6.0 * x2) / h_, 1.0 - 4.0 * xi + 3.0 * x2, (6.0 * xi - 6.0 * x2) / h_,
          3.0 * x2 - 2.0 * xi};
}

std::array<double, 4> PeriodicHermiteSpace::shape_dxx(double xi) const {
  const double h2 = h_ * h_;
  return {(-6.0 + 12.0 * xi) / h2, (-4.0 + 6.0 * xi) / h_, (6.0 - 12.0 * xi) / h2,
          (6.0 * xi - 2.0) / h_};
}

std::pair<int, double> PeriodicHermiteSpace::locate(double x) const {
  const double len = length();
  double y = std::fmod(x - a_, len);
  if (y < 0.0) {
    y += len;
  }
  int e = static_cast<int>(std::floor(y / h_));
  if (e >= cells_) {
    e = cells_ - 1;
  }
  return {e, y / h_ - e};
}

double PeriodicHermiteSpace::evaluate(const Vector& c, double x) const {
  const auto [e, xi] = locate(x);
  const auto dofs = cell_dofs(e);
  const auto phi = shape(xi);
  double v = 0.0;
  for (int k = 0; k < 4; ++k) {
    v += c[dofs[k]] * phi[k];
  }
  return v;
}

double PeriodicHermiteSpace::evaluate_dx(const Vector& c, double x) const {
  const auto [e, xi] = locate(x);
  const auto dofs = cell_dofs(e);
  const auto dphi = shape_dx(xi);
  double v = 0.0;
  for (int k = 0; k < 4; ++k) {
    v += c[dofs[k]] * dphi[k];
  }
  return v;
}

Vector PeriodicHermiteSpace::interpolate(const std::function<double(double)>& f,
                                         const std::function<double(double)>& df) const {
  Vector c(dofs());
  for (int k = 0; k < cells_; ++k) {
    const double x = a_ + k * h_;
    c[2 * k] = f(x);
    c[2 * k + 1] = df(x);
  }
  return c;
}

Vector PeriodicHermiteSpace::constant_one() const {
  Vector c = Vector::Zero(dofs());
  for (int k = 0; k < cells_; ++k) {
    c[2 * k] = 1.0;
  }
  return c;
}

double PeriodicHermiteSpace::integrate(
    const Vector& c, const std::function<double(double, double, double)>& g) const {
  double total = 0.0;
  for (int e = 0; e < cells_; ++e) {
    const auto dofs = cell_dofs(e);
    for (std::size_t q = 0; q < rule_.size(); ++q) {
      const double xi = rule_.nodes()[q];
      const auto phi = shape(xi);
      const auto dphi = shape_dx(xi);
      double u = 0.0;
      double ux = 0.0;
      for (int k = 0; k < 4; ++k) {
        u += c[dofs[k]] * phi[k];
        ux += c[dofs[k]] * dphi[k];
      }
      total += rule_.weights()[q] * h_ * g(a_ + (e + xi) * h_, u, ux);
    }
  }
  return total;
}

Matrix assemble_h1_gram(const PeriodicHermiteSpace& space) {
  const int n = space.dofs();
  const auto& rule = space.cell_rule();
  const double h = space.cell_width();
  Matrix g = Matrix::Zero(n, n);
  for (int e = 0; e < space.cells(); ++e) {
    const auto dofs = space.cell_dofs(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights()[q] * h;
      const auto phi = space.shape(rule.nodes()[q]);
      const auto dphi = space.shape_dx(rule.nodes()[q]);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          g(dofs[i], dofs[j]) += w * (phi[i] * phi[j] + dphi[i] * dphi[j]);
        }
      }
    }
  }
  return g;
}

Matrix assemble_derivative_pairing(const PeriodicHermiteSpace& space) {
  const int n = space.dofs();
  const auto& rule = space.cell_rule();
  const double h = space.cell_width();
  Matrix d = Matrix::Zero(n, n);
  for (int e = 0; e < space.cells(); ++e) {
    const auto dofs = space.cell_dofs(e);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights()[q] * h;
      const auto phi = space.shape(rule.nodes()[q]);
      const auto dphi = space.shape_dx(rule.nodes()[q]);
      const auto ddphi = space.shape_dxx(rule.nodes()[q]);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          d(dofs[i], dofs[j]) += w * (dphi[i] * phi[j] + ddphi[i] * dphi[j]);
        }
      }
    }
  }
  return d;
}

}  // namespace avint
