#include <doctest.h>

#include <cmath>
#include <random>

#include "avint/core/errors.hpp"
#include "avint/generic/generic_ode.hpp"
#include "avint/ode/conservative.hpp"
#include "avint/problems/engine.hpp"
#include "support.hpp"

using namespace avint;

namespace {

Matrix canonical() {
  Matrix b(2, 2);
  b << 0.0, 1.0, -1.0, 0.0;
  return b;
}

// Quartic oscillator, no friction, zero entropy.
GenericOdeSystem conservative_oscillator() {
  GenericOdeSystem sys;
  sys.dim = 2;
  sys.energy = [](const Vector& x) { return 0.5 * x[1] * x[1] + 0.25 * std::pow(x[0], 4); };
  sys.entropy = [](const Vector&) { return 0.0; };
  sys.energy_gradient = [](const Vector& x) {
    Vector g(2);
    g << std::pow(x[0], 3), x[1];
    return g;
  };
  sys.entropy_gradient = [](const Vector&) { return Vector(Vector::Zero(2)); };
  sys.poisson_ext = [](const Vector&, const Vector&) { return canonical(); };
  sys.friction_ext = [](const Vector&, const Vector&) { return Matrix(Matrix::Zero(2, 2)); };
  return sys;
}

// ẋ = ∇S with S = −½‖x‖² and E constant: pure relaxation towards the origin.
GenericOdeSystem gradient_flow() {
  GenericOdeSystem sys;
  sys.dim = 3;
  sys.energy = [](const Vector&) { return 1.0; };
  sys.entropy = [](const Vector& x) { return -0.5 * x.squaredNorm(); };
  sys.energy_gradient = [](const Vector&) { return Vector(Vector::Zero(3)); };
  sys.entropy_gradient = [](const Vector& x) { return Vector(-x); };
  sys.poisson_ext = [](const Vector&, const Vector&) { return Matrix(Matrix::Zero(3, 3)); };
  sys.friction_ext = [](const Vector&, const Vector&) { return Matrix(Matrix::Identity(3, 3)); };
  sys.energy_gradient_constant = true;
  return sys;
}

}  // namespace

TEST_CASE("without friction the scheme is the Poisson scheme") {
  const GenericOdeSystem sys = conservative_oscillator();
  const PoissonSystem poisson{2, [](const Vector&) { return canonical(); }, sys.energy, sys.energy_gradient};
  Vector x(2);
  x << 0.9, -0.3;
  for (int s = 1; s <= 2; ++s) {
    const Vector a = step_generic(sys, x, 0.2, s, IntegralOperator::gauss(s)).state;
    const Vector b = step_poisson_conservative(poisson, x, 0.2, s, IntegralOperator::gauss(s));
    CHECK((a - b).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(std::abs(sys.energy(a) - sys.energy(x)) <= 1e-13);
  }
}

TEST_CASE("gradient flow relaxes monotonically and tracks the exact decay") {
  const GenericOdeSystem sys = gradient_flow();
  Vector x(3);
  x << 1.0, -2.0, 0.5;
  const Vector x0 = x;
  double s_prev = sys.entropy(x);
  for (int k = 0; k < 20; ++k) {
    x = step_generic(sys, x, 0.05, 2, IntegralOperator::gauss(2)).state;
    const double s = sys.entropy(x);
    CHECK(s - s_prev >= 0.0);
    s_prev = s;
  }
  CHECK((x - std::exp(-1.0) * x0).norm() <= 1e-7);
}

TEST_CASE("degeneracy report") {
  const GenericOdeSystem flow = gradient_flow();
  Vector x(3);
  x << 0.1, 0.2, 0.3;
  const DegeneracyReport canon =
      check_degeneracy(conservative_oscillator(), Vector::Ones(2), Vector::Ones(2), Vector::Ones(2));
  CHECK(canon.skew_defect == 0.0);
  CHECK(canon.psd_min_eigenvalue == 0.0);

  GenericOdeSystem none = flow;
  none.friction_ext = [](const Vector&, const Vector&) { return Matrix(Matrix::Zero(3, 3)); };
  const DegeneracyReport zero = check_degeneracy(none, x, x, x);
  CHECK(zero.skew_defect == 0.0);
  CHECK(zero.psd_min_eigenvalue == 0.0);
  CHECK(zero.entropy_degeneracy == 0.0);
  CHECK(zero.energy_degeneracy == 0.0);

  // Engine friction at T̃ = T₀ = 1: the energy pattern spans its kernel.
  const engine::Params params;
  const GenericOdeSystem eng = engine::system(params);
  const Vector xe = engine::equilibrium_state(params, 0.0);
  const Vector we = eng.energy_gradient(xe);
  const DegeneracyReport rep = check_degeneracy(eng, xe, we, eng.entropy_gradient(xe));
  CHECK(rep.energy_degeneracy <= 1e-14);
  CHECK(rep.entropy_degeneracy == 0.0);
  CHECK(std::abs(rep.psd_min_eigenvalue) <= 1e-14);
}

TEST_CASE("validation catches broken systems") {
  const engine::Params params;
  const GenericSampler sample = engine::sampler(params);
  GenericOdeSystem broken = engine::system(params);
  broken.poisson_ext = [](const Vector&, const Vector&) {
    Matrix b = Matrix::Zero(9, 9);
    b(0, 1) = 1.0;
    return b;
  };
  CHECK_THROWS_AS(validate_generic_system(broken, sample), ConsistencyError);

  GenericOdeSystem indefinite = engine::system(params);
  indefinite.friction_ext = [](const Vector&, const Vector&) { return Matrix(-Matrix::Identity(9, 9)); };
  CHECK_THROWS_AS(validate_generic_system(indefinite, sample), ConsistencyError);
}

TEST_CASE("entropy is unchanged at thermal equilibrium") {
  const engine::Params params;
  const GenericOdeSystem eng = engine::system(params);
  const Vector x = engine::equilibrium_state(params, 0.0);
  const Vector next = step_generic(eng, x, 0.125, 1, IntegralOperator::gauss(1)).state;
  CHECK(std::abs(eng.entropy(next) - eng.entropy(x)) <= 1e-12);
}
