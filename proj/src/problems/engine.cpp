#include "avint/problems/engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "avint/core/errors.hpp"

namespace avint::engine {

namespace {

constexpr double kMinTemperature = 1e-8;

double phase(const Params& p, int c) {
  return 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(p.cylinders);
}

}  // namespace

void Params::validate() const {
  if (cylinders < 1) {
    throw ParameterError("engine needs at least one cylinder");
  }
  if (!(mean_volume > 1.0)) {
    throw ParameterError("engine mean piston volume must exceed 1");
  }
  if (!(heat_capacity > 0.0) || !(environment_temperature > 0.0)) {
    throw ParameterError("engine heat capacity and environment temperature must be positive");
  }
}

Quantities quantities(const Params& params, const Vector& state) {
  const int nc = params.cylinders;
  if (state.size() != params.dim()) {
    throw ParameterError("engine state must have C + 3 components");
  }
  const double theta = state[0];
  const double omega = state[1];
  const double t0 = params.environment_temperature;
  const double cv = params.heat_capacity;
  const double gamma = params.gamma();

  Quantities q;
  q.volume.resize(nc);
  q.pressure.resize(nc);
  q.temperature.resize(nc);
  q.energy_gradient = Vector::Zero(params.dim());
  q.entropy_gradient = Vector::Zero(params.dim());
  q.rhs = Vector::Zero(params.dim());

  double torque = 0.0;  // Σ P_c sin(θ − 2πc/C)
  double internal = 0.0;
  double heat_to_env = 0.0;
  for (int c = 0; c < nc; ++c) {
    const double angle = theta - phase(params, c + 1);
    const double v = params.mean_volume - std::cos(angle);
    if (!(v > 0.0)) {
      throw DomainError("engine cylinder " + std::to_string(c + 1) + " has nonpositive volume");
    }
    const double s = state[2 + c];
    const double p = std::exp(s / cv) * std::pow(v, -gamma);
    const double t = p * v;
    q.volume[c] = v;
    q.pressure[c] = p;
    q.temperature[c] = t;
    torque += p * std::sin(angle);
    internal += cv * t;
    q.energy_gradient[2 + c] = t;
    q.entropy_gradient[2 + c] = 1.0;
    q.rhs[2 + c] = (t0 - t) / t;
    heat_to_env += (t - t0) / t0;
    q.entropy += s;
  }
  const double s0 = state[nc + 2];
  q.energy = 0.5 * omega * omega + internal + t0 * s0;
  q.entropy += s0;
  q.energy_gradient[0] = -torque;
  q.energy_gradient[1] = omega;
  q.energy_gradient[nc + 2] = t0;
  q.entropy_gradient[nc + 2] = 1.0;
  q.rhs[0] = omega;
  q.rhs[1] = torque;
  q.rhs[nc + 2] = heat_to_env;
  return q;
}

Matrix poisson_matrix(const Params& params) {
  Matrix b = Matrix::Zero(params.dim(), params.dim());
  b(0, 1) = 1.0;
  b(1, 0) = -1.0;
  return b;
}

Matrix friction_matrix(const Params& params, const Vector& energy_aux) {
  const int nc = params.cylinders;
  const double t0 = params.environment_temperature;
  const int env = nc + 2;
  Matrix d = Matrix::Zero(params.dim(), params.dim());
  double corner = 0.0;
  for (int c = 0; c < nc; ++c) {
    const double t = energy_aux[2 + c];
    if (!(t > kMinTemperature)) {
      throw DomainError("engine auxiliary temperature of cylinder " + std::to_string(c + 1) +
                        " is not positive");
    }
    d(2 + c, 2 + c) = t0 / t;
    d(2 + c, env) = -1.0;
    d(env, 2 + c) = -1.0;
    corner += t / t0;
  }
  d(env, env) = corner;
  return d;
}

GenericOdeSystem system(const Params& params) {
  params.validate();
  GenericOdeSystem sys;
  sys.dim = params.dim();
  sys.energy = [params](const Vector& x) { return quantities(params, x).energy; };
  sys.entropy = [params](const Vector& x) { return quantities(params, x).entropy; };
  sys.energy_gradient = [params](const Vector& x) { return quantities(params, x).energy_gradient; };
  sys.entropy_gradient = [params](const Vector&) {
    Vector g = Vector::Ones(params.dim());
    g[0] = 0.0;
    g[1] = 0.0;
    return g;
  };
  sys.entropy_gradient_constant = true;
  const Matrix b = poisson_matrix(params);
  sys.poisson_ext = [b](const Vector&, const Vector&) { return b; };
  sys.poisson = [b](const Vector&) { return b; };
  sys.friction_ext = [params](const Vector&, const Vector& we) {
    return friction_matrix(params, we);
  };
  sys.friction = [params](const Vector& x) {
    return friction_matrix(params, quantities(params, x).energy_gradient);
  };
  return sys;
}

GenericSampler sampler(const Params& params) {
  GenericSampler out;
  out.state = [params](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector x = equilibrium_state(params, 8.0 * u(rng));
    x[0] = std::numbers::pi * u(rng);
    for (int c = 0; c < params.cylinders; ++c) {
      x[2 + c] += 0.5 * u(rng);
    }
    x[params.cylinders + 2] = u(rng);
    return x;
  };
  // Any auxiliary energy gradient whose environment slot is the constant T₀ and whose
  // temperatures are positive; the entropy gradient is state independent.
  out.energy_aux = [params](std::mt19937_64& rng, const Vector&) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> temp(0.1, 5.0);
    Vector w(params.dim());
    w[0] = 10.0 * u(rng);
    w[1] = 10.0 * u(rng);
    for (int c = 0; c < params.cylinders; ++c) {
      w[2 + c] = temp(rng);
    }
    w[params.cylinders + 2] = params.environment_temperature;
    return w;
  };
  out.entropy_aux = [params](std::mt19937_64&, const Vector&) {
    Vector g = Vector::Ones(params.dim());
    g[0] = 0.0;
    g[1] = 0.0;
    return g;
  };
  return out;
}

Vector equilibrium_state(const Params& params, double omega) {
  params.validate();
  Vector x = Vector::Zero(params.dim());
  x[1] = omega;
  const double t0 = params.environment_temperature;
  for (int c = 0; c < params.cylinders; ++c) {
    const double v = params.mean_volume - std::cos(-phase(params, c + 1));
    // T = exp(S/C_V)·V^{1−γ} = T₀ inverted for S, with C_V(γ − 1) = 1.
    x[2 + c] = params.heat_capacity * std::log(t0) + std::log(v);
  }
  return x;
}

Vector reflected_state(const Params& params, double omega) {
  Vector x = equilibrium_state(params, omega);
  x.segment(2, params.cylinders) *= -1.0;
  return x;
}

StepResult step(const Params& params, const Vector& state, double dt, int stages,
                const IntegralOperator& op, const NewtonOptions& newton) {
  return step_generic(system(params), state, dt, stages, op, newton);
}

}  // namespace avint::engine
