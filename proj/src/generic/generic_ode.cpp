#include "avint/generic/generic_ode.hpp"

#include <cmath>
#include <string>

#include "avint/core/errors.hpp"

namespace avint {

namespace {

double inf_norm(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Vector GenericOdeSystem::field(const Vector& x) const {
  const Vector ge = energy_gradient(x);
  const Vector gs = entropy_gradient(x);
  const Matrix b = poisson ? poisson(x) : poisson_ext(x, gs);
  const Matrix d = friction ? friction(x) : friction_ext(x, ge);
  return b * ge + d * gs;
}

DegeneracyReport check_degeneracy(const GenericOdeSystem& system, const Vector& x,
                                  const Vector& energy_aux, const Vector& entropy_aux) {
  const Matrix b = system.poisson_ext(x, entropy_aux);
  const Matrix d = system.friction_ext(x, energy_aux);
  DegeneracyReport report;
  report.skew_defect = inf_norm(b + b.transpose());
  const Matrix sym = 0.5 * (d + d.transpose());
  report.psd_min_eigenvalue =
      Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  report.entropy_degeneracy = inf_norm(entropy_aux.transpose() * b);
  report.energy_degeneracy = inf_norm(energy_aux.transpose() * d);
  return report;
}

void validate_generic_system(const GenericOdeSystem& system, const GenericSampler& sampler,
                             const ValidationOptions& options) {
  std::mt19937_64 rng(options.seed);
  const auto fail = [](int k, const std::string& what) {
    throw ConsistencyError("GENERIC validation sample " + std::to_string(k) + ": " + what);
  };
  for (int k = 0; k < options.samples; ++k) {
    const Vector x = sampler.state(rng);
    const Vector we = sampler.energy_aux(rng, x);
    const Vector ws = sampler.entropy_aux(rng, x);
    const DegeneracyReport r = check_degeneracy(system, x, we, ws);
    const double scale = std::max(1.0, std::max(we.cwiseAbs().maxCoeff(), ws.cwiseAbs().maxCoeff()));
    if (r.skew_defect > options.skew_tol * scale) {
      fail(k, "B̃ is not skew-symmetric");
    }
    if (r.psd_min_eigenvalue < options.psd_tol * scale) {
      fail(k, "D̃ is not positive semidefinite");
    }
    if (r.entropy_degeneracy > options.degeneracy_tol * scale) {
      fail(k, "w̃_Sᵀ B̃ ≠ 0");
    }
    if (r.energy_degeneracy > options.degeneracy_tol * scale) {
      fail(k, "w̃_Eᵀ D̃ ≠ 0");
    }
    if (system.poisson) {
      const Matrix diff = system.poisson_ext(x, system.entropy_gradient(x)) - system.poisson(x);
      if (inf_norm(diff) > options.coincidence_tol * scale) {
        fail(k, "B̃(x, ∇S) differs from B(x)");
      }
    }
    if (system.friction) {
      const Matrix diff = system.friction_ext(x, system.energy_gradient(x)) - system.friction(x);
      if (inf_norm(diff) > options.coincidence_tol * scale) {
        fail(k, "D̃(x, ∇E) differs from D(x)");
      }
    }
  }
}

AuxiliaryField generic_field(const GenericOdeSystem& system) {
  if (!system.energy_gradient || !system.entropy_gradient || !system.poisson_ext ||
      !system.friction_ext) {
    throw ParameterError("GENERIC system is missing gradients or extended matrices");
  }
  AuxiliaryField out;
  out.targets.push_back({system.energy_gradient, system.energy_gradient_constant});
  out.targets.push_back({system.entropy_gradient, system.entropy_gradient_constant});
  out.field = [system](const Vector& x, std::span<const Vector> aux) -> Vector {
    const Vector& we = aux[0];
    const Vector& ws = aux[1];
    return system.poisson_ext(x, ws) * we + system.friction_ext(x, we) * ws;
  };
  return out;
}

StepResult step_generic(const GenericOdeSystem& system, const Vector& x, double dt, int stages,
                        const IntegralOperator& op, const NewtonOptions& newton) {
  const AuxiliaryStepper stepper(generic_field(system), op, stages, newton);
  return stepper.step(x, 0.0, dt, true);
}

}  // namespace avint
