#include "avint/problems/kepler.hpp"

#include <cmath>

#include "avint/core/errors.hpp"

namespace avint::kepler {

namespace {

struct Parts {
  Eigen::Vector2d x;
  Eigen::Vector2d v;
  double r;
};

Parts split(const Vector& state) {
  if (state.size() != 4) {
    throw ParameterError("Kepler state must have 4 components");
  }
  Parts p{state.head<2>(), state.tail<2>(), 0.0};
  p.r = p.x.norm();
  if (!(p.r > 0.0)) {
    throw DomainError("Kepler state at the origin");
  }
  return p;
}

Vector join(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  Vector out(4);
  out << a, b;
  return out;
}

}  // namespace

double Invariants::angle() const { return std::atan2(runge_lenz[1], runge_lenz[0]); }

Invariants invariants(const Vector& state) {
  const Parts p = split(state);
  Invariants out;
  out.energy = 0.5 * p.v.squaredNorm() - 1.0 / p.r;
  out.angular_momentum = p.x[0] * p.v[1] - p.x[1] * p.v[0];
  const double l = out.angular_momentum;
  out.runge_lenz = Eigen::Vector2d(p.v[1] * l, -p.v[0] * l) - p.x / p.r;
  return out;
}

Vector field(const Vector& state) {
  const Parts p = split(state);
  return join(p.v, -p.x / (p.r * p.r * p.r));
}

Vector energy_gradient(const Vector& state) {
  const Parts p = split(state);
  return join(p.x / (p.r * p.r * p.r), p.v);
}

Vector angular_momentum_gradient(const Vector& state) {
  const Parts p = split(state);
  return join(Eigen::Vector2d(p.v[1], -p.v[0]), Eigen::Vector2d(-p.x[1], p.x[0]));
}

Vector runge_lenz_gradient(const Vector& state, int k) {
  const Parts p = split(state);
  const double r3 = p.r * p.r * p.r;
  // ∇ₓA = x⊗x/r³ − v⊗v + (‖v‖² − 1/r)I and ∇ᵥA = 2x⊗v − v⊗x − (x·v)I; row k is ∇A_k.
  Eigen::Matrix2d dx = p.x * p.x.transpose() / r3 - p.v * p.v.transpose() +
                       (p.v.squaredNorm() - 1.0 / p.r) * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d dv = 2.0 * p.x * p.v.transpose() - p.v * p.x.transpose() -
                       p.x.dot(p.v) * Eigen::Matrix2d::Identity();
  return join(dx.row(k).transpose(), dv.row(k).transpose());
}

AlternatingForm form(const Vector& state) {
  const Invariants inv = invariants(state);
  const double prefactor = 2.0 * inv.angular_momentum * inv.energy;
  if (std::abs(prefactor) < 1e-12) {
    throw DegeneracyError("Kepler form: 2LH vanishes (parabolic or radial orbit)");
  }
  const auto evaluate = [prefactor](FormArgs args) {
    Eigen::Matrix4d m;
    m << args[3], args[0], args[1], args[2];
    return m.determinant() / prefactor;
  };
  // F̃[a₁, a₂, a₃, ·] is the cofactor vector of the first column.
  const auto contract = [prefactor](FormArgs leading) -> Vector {
    Eigen::Matrix<double, 4, 3> cols;
    cols << leading[0], leading[1], leading[2];
    Vector g(4);
    for (int i = 0; i < 4; ++i) {
      Eigen::Matrix3d minor;
      int row = 0;
      for (int j = 0; j < 4; ++j) {
        if (j != i) {
          minor.row(row++) = cols.row(j);
        }
      }
      g[i] = ((i % 2 == 0) ? 1.0 : -1.0) * minor.determinant() / prefactor;
    }
    return g;
  };
  return AlternatingForm(4, 4, evaluate, contract);
}

ConservativeSystem conservative_system() {
  std::vector<Invariant> invs{
      {"H", [](const Vector& x) { return invariants(x).energy; }, energy_gradient},
      {"A1", [](const Vector& x) { return invariants(x).runge_lenz[0]; },
       [](const Vector& x) { return runge_lenz_gradient(x, 0); }},
      {"A2", [](const Vector& x) { return invariants(x).runge_lenz[1]; },
       [](const Vector& x) { return runge_lenz_gradient(x, 1); }},
  };
  return ConservativeSystem(4, field, std::move(invs), form);
}

PoissonSystem poisson_system() {
  PoissonSystem sys;
  sys.dim = 4;
  sys.structure = [](const Vector&) {
    Matrix b = Matrix::Zero(4, 4);
    b.topRightCorner(2, 2) = Matrix::Identity(2, 2);
    b.bottomLeftCorner(2, 2) = -Matrix::Identity(2, 2);
    return b;
  };
  sys.hamiltonian = [](const Vector& x) { return invariants(x).energy; };
  sys.gradient = energy_gradient;
  return sys;
}

Vector standard_initial_state() {
  Vector x(4);
  x << 0.4, 0.0, 0.0, 2.0;
  return x;
}

}  // namespace avint::kepler
