#include <doctest.h>

#include <cmath>
#include <random>

#include "avint/core/errors.hpp"
#include "avint/core/integral_operator.hpp"
#include "avint/core/polynomial.hpp"
#include "avint/core/step_discretisation.hpp"
#include "support.hpp"

using namespace avint;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

std::vector<IntegralOperator> operators_for(int s) {
  return {IntegralOperator::gauss(s), IntegralOperator::exact(),
          IntegralOperator::stage_quadrature(gauss_legendre_rule(s + 2))};
}

}  // namespace

TEST_CASE("apply scales with dt") {
  const IntegralOperator midpoint = IntegralOperator::gauss(1);
  CHECK(midpoint.apply(0.1, [](double) { return 1.0; }) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(midpoint.apply(1.0, [](double t) { return t; }) == doctest::Approx(0.5).epsilon(1e-15));
  // One Gauss point cannot see the curvature of τ².
  CHECK(midpoint.apply(1.0, [](double t) { return t * t; }) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(IntegralOperator::exact().apply(1.0, [](double t) { return t * t; }) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("exact operator integrates polynomials up to twice the reference stages minus one") {
  const IntegralOperator op = IntegralOperator::exact(gauss_legendre_rule(4));
  for (int k = 0; k <= 7; ++k) {
    CHECK(std::abs(op.apply(2.0, [k](double t) { return std::pow(t, k); }) - 2.0 / (k + 1)) <
          1e-14);
  }
}

TEST_CASE("apply is linear in the integrand") {
  const IntegralOperator op = IntegralOperator::gauss(3);
  auto f = [](double t) { return std::sin(3.0 * t); };
  auto g = [](double t) { return std::exp(t); };
  const double lhs = op.apply(0.7, [&](double t) { return 2.0 * f(t) - 5.0 * g(t); });
  CHECK(lhs == doctest::Approx(2.0 * op.apply(0.7, f) - 5.0 * op.apply(0.7, g)).epsilon(1e-14));
}

TEST_CASE("projection of tau squared onto constants is the mean") {
  auto g = [](double t) { return scalar(t * t); };
  for (const IntegralOperator& op : {IntegralOperator::gauss(1), IntegralOperator::exact()}) {
    const TestPolynomial w = project_auxiliary(op, 1.0, 1, g);
    CHECK(w.value(0.3)[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("projection reproduces test-space polynomials") {
  std::mt19937_64 rng(11);
  for (int s = 1; s <= 4; ++s) {
    const Vector c = testing::random_vector(rng, s);
    auto g = [&](double t) {
      double v = 0.0;
      for (int k = s - 1; k >= 0; --k) {
        v = v * t + c[k];
      }
      return scalar(v);
    };
    for (const IntegralOperator& op : operators_for(s)) {
      const TestPolynomial w = project_auxiliary(op, 0.25, s, g);
      for (double t : {0.0, 0.37, 0.81, 1.0}) {
        CHECK(std::abs(w.value(t)[0] - g(t)[0]) <= 1e-13);
      }
    }
  }
}

TEST_CASE("projection is idempotent and satisfies the discrete Riesz identity") {
  std::mt19937_64 rng(12);
  auto g = [](double t) {
    Vector v(2);
    v << std::exp(t), std::cos(4.0 * t);
    return v;
  };
  for (int s = 1; s <= 4; ++s) {
    for (const IntegralOperator& op : operators_for(s)) {
      const double dt = 0.3;
      const TestPolynomial w = project_auxiliary(op, dt, s, g);
      const TestPolynomial ww =
          project_auxiliary(op, dt, s, [&](double t) { return w.value(t); });
      CHECK((ww.nodal_values() - w.nodal_values()).lpNorm<Eigen::Infinity>() <= 1e-13);

      for (int trial = 0; trial < 5; ++trial) {
        // Random y ∈ P_{s−1} in monomial form.
        const Matrix coeffs = Matrix::Random(2, s);
        auto y = [&](double t) {
          Vector v = Vector::Zero(2);
          for (int k = s - 1; k >= 0; --k) {
            v = v * t + coeffs.col(k);
          }
          return v;
        };
        const double lhs = op.apply(dt, [&](double t) { return w.value(t).dot(y(t)); });
        const double rhs = op.integrate_reference(dt, [&](double t) { return g(t).dot(y(t)); });
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("operators that cannot define a norm on the test space are rejected") {
  CHECK_THROWS_AS(StepDiscretisation(IntegralOperator::gauss(1), 2), ParameterError);
}

TEST_CASE("timestep polynomial carries the initial value and a degree s-1 derivative") {
  const StepDiscretisation disc(IntegralOperator::gauss(3), 3);
  Matrix stages(1, 3);
  // x(t) = 1 + t + t² + t³ on [2, 2.5]: nodal values at the Gauss nodes.
  const double t0 = 2.0;
  const double dt = 0.5;
  auto x = [&](double tau) {
    const double t = t0 + tau * dt;
    return 1.0 + t + t * t + t * t * t;
  };
  for (int i = 0; i < 3; ++i) {
    stages(0, i) = x(disc.test_basis().nodes()[static_cast<std::size_t>(i)]);
  }
  const TimestepPolynomial p = disc.trajectory(scalar(x(0.0)), stages, t0, dt);
  CHECK(p.initial_value()[0] == doctest::Approx(x(0.0)));
  CHECK(p.end_value()[0] == doctest::Approx(x(1.0)).epsilon(1e-13));
  for (double tau : {0.0, 0.4, 1.0}) {
    const double t = t0 + tau * dt;
    CHECK(p.time_derivative(tau)[0] == doctest::Approx(1.0 + 2.0 * t + 3.0 * t * t).epsilon(1e-12));
  }
}

TEST_CASE("Lagrange basis is a partition of unity with cardinal values") {
  const LagrangeBasis b({0.0, 0.2, 0.7, 1.0});
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(b.values(t).sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(b.derivatives(t).sum()) < 1e-12);
  }
  const Vector at = b.values(0.7);
  CHECK(at[2] == doctest::Approx(1.0));
  CHECK(std::abs(at[0]) + std::abs(at[1]) + std::abs(at[3]) < 1e-14);
  CHECK_THROWS_AS(LagrangeBasis({0.1, 0.1}), ParameterError);
}
