#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "avint/core/errors.hpp"
#include "avint/generic/generic_ode.hpp"
#include "avint/problems/engine.hpp"
#include "support.hpp"

using namespace avint;

namespace {

const engine::Params kParams{};

double volume(int c, double theta) {
  return 1.0 + 1.0 / 16.0 - std::cos(theta - 2.0 * std::numbers::pi * c / 6.0);
}

Vector random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector x(9);
  x[0] = std::numbers::pi * u(rng);
  x[1] = 8.0 * u(rng);
  for (int c = 1; c <= 6; ++c) {
    x[1 + c] = std::log(volume(c, 0.0)) + 0.5 * u(rng);
  }
  x[8] = u(rng);
  return x;
}

}  // namespace

TEST_CASE("thermal equilibrium inverts the equation of state") {
  const Vector x = engine::equilibrium_state(kParams, 8.0);
  for (int c = 1; c <= 6; ++c) {
    CHECK(x[1 + c] == doctest::Approx(std::log(volume(c, 0.0))).epsilon(1e-15));
  }
  const engine::Quantities q = engine::quantities(kParams, x);
  for (double t : q.temperature) {
    CHECK(t == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(q.energy == doctest::Approx(0.5 * 64.0 + 6.0 * 2.5).epsilon(1e-14));
}

TEST_CASE("reflected start") {
  // S_c = −ln V_c gives T_c = V_c^{−2/C_V}.
  const Vector x = engine::reflected_state(kParams, 8.0);
  double energy = 32.0;
  double entropy = 0.0;
  for (int c = 1; c <= 6; ++c) {
    energy += 2.5 * std::pow(volume(c, 0.0), -0.8);
    entropy -= std::log(volume(c, 0.0));
  }
  const engine::Quantities q = engine::quantities(kParams, x);
  CHECK(q.energy == doctest::Approx(energy).epsilon(1e-14));
  CHECK(q.entropy == doctest::Approx(entropy).epsilon(1e-14));
  CHECK(q.energy == doctest::Approx(67.8).epsilon(0.001));
  CHECK(q.entropy == doctest::Approx(2.3).epsilon(0.01));
}

TEST_CASE("quantities against direct formulas and finite differences") {
  std::mt19937_64 rng(41);
  const GenericOdeSystem sys = engine::system(kParams);
  for (int k = 0; k < 20; ++k) {
    const Vector x = random_state(rng);
    const engine::Quantities q = engine::quantities(kParams, x);
    for (int c = 1; c <= 6; ++c) {
      const double v = volume(c, x[0]);
      const double p = std::exp(x[1 + c] / 2.5) * std::pow(v, -1.4);
      CHECK(q.pressure[c - 1] == doctest::Approx(p).epsilon(1e-14));
      CHECK(q.temperature[c - 1] == doctest::Approx(p * v).epsilon(1e-14));
    }
    CHECK(testing::rel_error(q.energy_gradient,
                             testing::fd_gradient([](const Vector& y) { return engine::quantities(kParams, y).energy; }, x)) <
          1e-7);
    Vector ones = Vector::Ones(9);
    ones.head<2>().setZero();
    CHECK(q.entropy_gradient == ones);

    // The right-hand side is the GENERIC field B∇E + D∇S.
    CHECK(testing::rel_error(sys.field(x), q.rhs) < 1e-13);
  }
}

TEST_CASE("nonpositive volume is a domain error") {
  engine::Params p = kParams;
  p.mean_volume = 1.01;
  Vector x = engine::equilibrium_state(p, 0.0);
  x[0] = 2.0 * std::numbers::pi / 6.0;  // cylinder 1 at minimum volume 0.01
  CHECK_NOTHROW((void)engine::quantities(p, x));
  p.mean_volume = 1.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  CHECK_THROWS_AS((void)engine::quantities(p, x), DomainError);
}

TEST_CASE("degeneracy of B and D at random states") {
  std::mt19937_64 rng(43);
  const Matrix b = engine::poisson_matrix(kParams);
  for (int k = 0; k < 100; ++k) {
    const engine::Quantities q = engine::quantities(kParams, random_state(rng));
    const Matrix d = engine::friction_matrix(kParams, q.energy_gradient);
    CHECK((q.entropy_gradient.transpose() * b).lpNorm<Eigen::Infinity>() <= 1e-10);
    CHECK((q.energy_gradient.transpose() * d).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("extended friction matrix") {
  std::mt19937_64 rng(47);
  const GenericOdeSystem sys = engine::system(kParams);
  const GenericSampler sample = engine::sampler(kParams);
  for (int k = 0; k < 100; ++k) {
    const Vector x = sample.state(rng);
    const Vector we = sample.energy_aux(rng, x);
    const Matrix d = engine::friction_matrix(kParams, we);
    CHECK((d - d.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(d);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    CHECK((we.transpose() * d).lpNorm<Eigen::Infinity>() <= 1e-12 * d.lpNorm<Eigen::Infinity>());
  }
  const Vector x = engine::reflected_state(kParams, 3.0);
  CHECK((sys.friction_ext(x, sys.energy_gradient(x)) - sys.friction(x)).norm() == 0.0);

  Vector bad = engine::quantities(kParams, x).energy_gradient;
  bad[4] = 0.0;
  CHECK_THROWS_AS((void)engine::friction_matrix(kParams, bad), DomainError);
  CHECK_NOTHROW(validate_generic_system(sys, sample));
}

TEST_CASE("equilibrium at rest is a fixed point") {
  const Vector x0 = engine::equilibrium_state(kParams, 0.0);
  Vector x = x0;
  for (int k = 0; k < 10; ++k) {
    const Vector next = engine::step(kParams, x, 0.0625, 2, IntegralOperator::gauss(2)).state;
    CHECK((next - x).lpNorm<Eigen::Infinity>() <= 1e-12);
    x = next;
  }
}

TEST_CASE("energy and entropy over the short run") {
  const GenericOdeSystem sys = engine::system(kParams);
  for (const Vector& start : {engine::equilibrium_state(kParams, 8.0), engine::reflected_state(kParams, 8.0)}) {
    Vector x = start;
    const double e0 = sys.energy(x);
    double s_prev = sys.entropy(x);
    double worst_e = 0.0;
    double worst_ds = 0.0;
    for (int k = 0; k < 1024; ++k) {
      x = engine::step(kParams, x, 0.0625, 1, IntegralOperator::gauss(1)).state;
      const double s = sys.entropy(x);
      worst_e = std::max(worst_e, std::abs(sys.energy(x) - e0));
      worst_ds = std::min(worst_ds, s - s_prev);
      s_prev = s;
    }
    CHECK(worst_e <= 1e-8);
    CHECK(worst_ds >= -1e-12);
  }
}
