#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "avint/core/errors.hpp"
#include "avint/ode/baselines.hpp"
#include "avint/ode/conservative.hpp"
#include "avint/ode/trajectory.hpp"
#include "avint/problems/kepler.hpp"
#include "avint/problems/kovalevskaya.hpp"
#include "support.hpp"

using namespace avint;

namespace {

Matrix canonical() {
  Matrix b(2, 2);
  b << 0.0, 1.0, -1.0, 0.0;
  return b;
}

// ẋ = (−x₂, x₁) conserving ½‖x‖², with the constructive form.
ConservativeSystem rotation() {
  return ConservativeSystem(
      2,
      [](const Vector& x) {
        Vector f(2);
        f << -x[1], x[0];
        return f;
      },
      {{"N", [](const Vector& x) { return 0.5 * x.squaredNorm(); },
        [](const Vector& x) { return x; }}});
}

Vector rotated(const Vector& x, double angle) {
  Vector r(2);
  r << std::cos(angle) * x[0] - std::sin(angle) * x[1], std::sin(angle) * x[0] + std::cos(angle) * x[1];
  return r;
}

PoissonSystem pendulum() {
  return {2, [](const Vector&) { return canonical(); },
          [](const Vector& x) { return 0.5 * x[1] * x[1] - std::cos(x[0]); },
          [](const Vector& x) {
            Vector g(2);
            g << std::sin(x[0]), x[1];
            return g;
          }};
}

PoissonSystem oscillator() {
  return {2, [](const Vector&) { return canonical(); },
          [](const Vector& x) { return 0.5 * x.squaredNorm(); }, [](const Vector& x) { return x; }};
}

Vector xy(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("zero field leaves the state fixed") {
  const ConservativeSystem sys(
      3, [](const Vector&) { return Vector(Vector::Zero(3)); },
      {{"N", [](const Vector& x) { return x[0]; }, [](const Vector&) { return Vector(Vector::Unit(3, 0)); }}});
  Vector x0(3);
  x0 << 0.2, -1.0, 3.0;
  const StepResult r = step_conservative(sys, x0, 0.5, 2, IntegralOperator::gauss(2));
  CHECK((r.state - x0).norm() < 1e-15);
}

TEST_CASE("one Kepler step keeps H, L and A") {
  const StepResult r = step_conservative(kepler::conservative_system(), kepler::standard_initial_state(),
                                         0.1, 1, IntegralOperator::gauss(1));
  const kepler::Invariants inv = kepler::invariants(r.state);
  CHECK(std::abs(inv.energy + 0.5) <= 1e-10);
  CHECK(std::abs(inv.angular_momentum - 0.8) <= 1e-10);
  CHECK((inv.runge_lenz - Eigen::Vector2d(0.6, 0.0)).norm() <= 1e-9);
  REQUIRE(r.trajectory.has_value());
  CHECK((r.trajectory->end_value() - r.state).norm() < 1e-14);
}

TEST_CASE("linear rotation keeps the norm and tracks the exact rotation") {
  const Vector x0 = xy(1.0, 0.5);
  const StepResult r = step_conservative(rotation(), x0, 0.5, 2, IntegralOperator::gauss(2));
  CHECK(std::abs(r.state.norm() - x0.norm()) <= 1e-13);
  // Linear field and quadratic invariant: the step is the (2,2) Padé approximant of e^{iΔt}, whose
  // distance from the exact rotation at Δt = 0.5 is about Δt⁵/720.
  const std::complex<double> z(0.0, 0.5);
  const std::complex<double> pade = (1.0 + z / 2.0 + z * z / 12.0) / (1.0 - z / 2.0 + z * z / 12.0);
  const std::complex<double> w = pade * std::complex<double>(x0[0], x0[1]);
  CHECK((r.state - xy(w.real(), w.imag())).norm() <= 1e-12);
  CHECK((r.state - rotated(x0, 0.5)).norm() <= 1.2 * std::pow(0.5, 5) / 720.0 * x0.norm());
}

TEST_CASE("Poisson scheme on the harmonic oscillator") {
  // At the default Newton tolerance the accumulated solver residual alone reaches 5e-12.
  NewtonOptions tight;
  tight.tol = 1e-14;
  Vector x = xy(1.0, 0.0);
  const double h0 = 0.5 * x.squaredNorm();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    x = step_poisson_conservative(oscillator(), x, 0.1, 2, IntegralOperator::gauss(2), tight);
    worst = std::max(worst, std::abs(0.5 * x.squaredNorm() - h0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Poisson scheme on the pendulum") {
  const PoissonSystem p = pendulum();
  Vector x = xy(1.0, 0.3);
  for (int k = 0; k < 50; ++k) {
    const Vector next = step_poisson_conservative(p, x, 0.1, 1, IntegralOperator::gauss(1));
    CHECK(std::abs(p.hamiltonian(next) - p.hamiltonian(x)) <= 1e-10);
    x = next;
  }
}

TEST_CASE("zero structure freezes the state") {
  const PoissonSystem frozen{2, [](const Vector&) { return Matrix(Matrix::Zero(2, 2)); },
                             [](const Vector& x) { return x.squaredNorm(); },
                             [](const Vector& x) { return Vector(2.0 * x); }};
  const Vector x0 = xy(0.3, -0.2);
  CHECK((step_poisson_conservative(frozen, x0, 0.4, 2, IntegralOperator::gauss(2)) - x0).norm() < 1e-15);
}

TEST_CASE("implicit midpoint basics") {
  const VectorField zero = [](const Vector& x) { return Vector(Vector::Zero(x.size())); };
  const Vector x0 = xy(1.0, 2.0);
  CHECK((step_implicit_midpoint(zero, x0, 0.3) - x0).norm() < 1e-15);

  const double lambda = -0.7;
  const double dt = 0.05;
  const VectorField linear = [lambda](const Vector& x) { return Vector(lambda * x); };
  const Vector x1 = step_implicit_midpoint(linear, x0, dt);
  const double factor = (1.0 + 0.5 * lambda * dt) / (1.0 - 0.5 * lambda * dt);
  CHECK((x1 - factor * x0).norm() < 1e-12);
}

TEST_CASE("implicit midpoint keeps Kepler's angular momentum") {
  Vector x = kepler::standard_initial_state();
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    x = step_implicit_midpoint(kepler::field, x, 0.1);
    worst = std::max(worst, std::abs(kepler::invariants(x).angular_momentum - 0.8));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("one-stage Gauss is implicit midpoint") {
  const Vector x0 = kepler::standard_initial_state();
  CHECK((step_gauss(kepler::field, x0, 0.1, 1) - step_implicit_midpoint(kepler::field, x0, 0.1)).norm() <
        1e-13);
}

TEST_CASE("Gauss collocation reaches order 2s on exponential decay") {
  const VectorField decay = [](const Vector& x) { return Vector(-x); };
  for (int s = 1; s <= 3; ++s) {
    std::vector<double> errors;
    for (int n : {4, 8}) {
      Vector x = Vector::Ones(1);
      for (int k = 0; k < n; ++k) {
        x = step_gauss(decay, x, 1.0 / n, s);
      }
      errors.push_back(std::abs(x[0] - std::exp(-1.0)));
    }
    CHECK(std::log2(errors[0] / errors[1]) >= 2 * s - 0.25);
  }
}

TEST_CASE("Gauss collocation keeps quadratic invariants") {
  const VectorField rot = [](const Vector& y) { return Vector(canonical() * y); };
  Vector x = xy(1.0, 0.0);
  for (int k = 0; k < 200; ++k) {
    x = step_gauss(rot, x, 0.2, 3);
  }
  CHECK(std::abs(x.norm() - 1.0) <= 1e-11);
}

TEST_CASE("mean-value discrete gradient") {
  // Quadratic H: the averaged gradient is the midpoint gradient.
  const Vector x0 = xy(0.4, 1.1);
  const PoissonSystem osc = oscillator();
  NewtonOptions tight;
  tight.tol = 1e-15;
  const Vector im = step_implicit_midpoint([&](const Vector& x) { return osc.field(x); }, x0, 0.3, tight);
  CHECK((step_mean_value_dg(osc, x0, 0.3, gauss_legendre_rule(12), tight) - im).norm() < 1e-13);

  Vector x = kepler::standard_initial_state();
  const PoissonSystem kp = kepler::poisson_system();
  double l_drift = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vector next = step_mean_value_dg(kp, x, 0.1);
    CHECK(std::abs(kp.hamiltonian(next) - kp.hamiltonian(x)) <= 1e-10);
    x = next;
    l_drift = std::max(l_drift, std::abs(kepler::invariants(x).angular_momentum - 0.8));
  }
  CHECK(l_drift > 1e-6);

  const PoissonSystem flat{2, [](const Vector&) { return canonical(); },
                           [](const Vector&) { return 1.0; },
                           [](const Vector&) { return Vector(Vector::Zero(2)); }};
  CHECK((step_mean_value_dg(flat, x0, 0.3) - x0).norm() < 1e-15);
}

TEST_CASE("multi-conservation over 500 steps") {
  for (int s = 1; s <= 3; ++s) {
    const AuxiliaryStepper kep(conservative_field(kepler::conservative_system()),
                               IntegralOperator::gauss(s), s);
    Vector x = kepler::standard_initial_state();
    const kepler::Invariants k0 = kepler::invariants(x);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
      x = kep.step(x, 0.1 * k, 0.1).state;
      const kepler::Invariants ki = kepler::invariants(x);
      worst = std::max({worst, std::abs(ki.energy - k0.energy),
                        std::abs(ki.angular_momentum - k0.angular_momentum),
                        (ki.runge_lenz - k0.runge_lenz).lpNorm<Eigen::Infinity>()});
    }
    CHECK(worst <= 1e-8);

    // The top's form has poles along the flow; a short step keeps every node clear of them.
    const AuxiliaryStepper kov(conservative_field(kovalevskaya::conservative_system()),
                               IntegralOperator::gauss(s), s);
    Vector y = kovalevskaya::standard_initial_state();
    const kovalevskaya::Invariants v0 = kovalevskaya::invariants(y);
    double worst_k = 0.0;
    for (int k = 0; k < 500; ++k) {
      y = kov.step(y, 0.002 * k, 0.002).state;
      const kovalevskaya::Invariants vi = kovalevskaya::invariants(y);
      worst_k = std::max({worst_k, std::abs(vi.energy - v0.energy),
                          std::abs(vi.norm_squared - v0.norm_squared),
                          std::abs(vi.momentum - v0.momentum),
                          std::abs(vi.kovalevskaya - v0.kovalevskaya)});
    }
    CHECK(worst_k <= 1e-8);
  }
}

TEST_CASE("conservative scheme converges at order 2s on the rotation") {
  for (int s = 1; s <= 3; ++s) {
    std::vector<double> errors;
    for (int n : {8, 16}) {
      const AuxiliaryStepper st(conservative_field(rotation()), IntegralOperator::gauss(s), s);
      Vector x = xy(1.0, 0.0);
      for (int k = 0; k < n; ++k) {
        x = st.step(x, 0.0, 2.0 / n).state;
      }
      errors.push_back((x - rotated(xy(1.0, 0.0), 2.0)).norm());
    }
    CHECK(std::log2(errors[0] / errors[1]) >= 2 * s - 0.25);
  }
}

TEST_CASE("one conservative step agrees with collocation to high order") {
  for (int s = 1; s <= 2; ++s) {
    std::vector<double> gaps;
    for (double dt : {0.1, 0.05}) {
      const Vector x0 = kepler::standard_initial_state();
      const Vector ours =
          step_conservative(kepler::conservative_system(), x0, dt, s, IntegralOperator::gauss(s)).state;
      gaps.push_back((ours - step_gauss(kepler::field, x0, dt, s)).norm());
    }
    CHECK(std::log2(gaps[0] / gaps[1]) >= s + 2 - 0.25);
  }
}

TEST_CASE("trajectory loop") {
  const Stepper hold = [](const Vector& x, double, double) { return StepOutcome{x, 0}; };
  const Vector x0 = xy(1.0, 2.0);
  const TimeSeries none = run_trajectory(hold, x0, 0.1, 0.0, {});
  CHECK(none.size() == 1);

  const TimeSeries flat =
      run_trajectory(hold, x0, 0.25, 2.0, {{"sum", [](const Vector& x) { return x.sum(); }}});
  CHECK(flat.size() == 9);
  CHECK(flat.max_drift(0) == 0.0);

  const AuxiliaryStepper st(conservative_field(kepler::conservative_system()), IntegralOperator::gauss(1), 1);
  const Stepper kep = [&](const Vector& x, double t, double dt) {
    const StepResult r = st.step(x, t, dt);
    return StepOutcome{r.state, r.newton_iterations};
  };
  const TimeSeries long_run = run_trajectory(kep, kepler::standard_initial_state(), 0.1, 100.0, {});
  CHECK(long_run.size() == 1001);
  CHECK(long_run.times.back() == doctest::Approx(100.0));

  const Stepper failing = [](const Vector& x, double t, double) {
    if (t > 0.25) {
      throw ConvergenceError("stuck", 1.0, 3);
    }
    return StepOutcome{x, 1};
  };
  try {
    (void)run_trajectory(failing, x0, 0.1, 1.0, {});
    FAIL("expected a step error");
  } catch (const StepError& e) {
    CHECK(e.step_index() == 3);
  }
  CHECK_THROWS_AS((void)step_count(0.3, 1.0), ParameterError);
}
