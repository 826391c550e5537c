#include "avint/ode/conservative.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "avint/core/errors.hpp"

namespace avint {

ConservativeSystem::ConservativeSystem(int dim, VectorField field,
                                       std::vector<Invariant> invariants, FormFactory form)
    : dim_(dim), field_(std::move(field)), invariants_(std::move(invariants)),
      form_(std::move(form)) {
  if (dim < 1 || !field_) {
    throw ParameterError("conservative system needs dim ≥ 1 and a vector field");
  }
  if (static_cast<int>(invariants_.size()) >= dim) {
    throw ParameterError("conservative system needs fewer invariants than dimensions");
  }
  for (const auto& inv : invariants_) {
    if (!inv.value || !inv.gradient) {
      throw ParameterError("invariant '" + inv.name + "' lacks a value or gradient");
    }
  }
}

AlternatingForm ConservativeSystem::form(const Vector& x) const {
  if (form_) {
    return form_(x);
  }
  std::vector<Vector> grads;
  grads.reserve(invariants_.size());
  for (const auto& inv : invariants_) {
    grads.push_back(inv.gradient(x));
  }
  return constructive_form(field_(x), grads);
}

double ConservativeSystem::conservation_defect(const std::vector<Vector>& states) const {
  double worst = 0.0;
  for (const auto& x : states) {
    const Vector f = field_(x);
    for (const auto& inv : invariants_) {
      const Vector g = inv.gradient(x);
      worst = std::max(worst, std::abs(g.dot(f)) / std::max(1.0, g.norm() * f.norm()));
    }
  }
  return worst;
}

double PoissonSystem::skew_defect(const std::vector<Vector>& states) const {
  double worst = 0.0;
  for (const auto& x : states) {
    const Matrix b = structure(x);
    worst = std::max(worst, (b + b.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

AuxiliaryField conservative_field(const ConservativeSystem& system) {
  AuxiliaryField out;
  for (const auto& inv : system.invariants()) {
    out.targets.push_back({inv.gradient, false});
  }
  out.field = [system](const Vector& x, std::span<const Vector> aux) -> Vector {
    if (aux.empty()) {
      return system.field(x);
    }
    return system.form(x).contract(aux);
  };
  out.predictor = [system](const Vector& x) { return system.field(x); };
  return out;
}

AuxiliaryField poisson_field(const PoissonSystem& system) {
  AuxiliaryField out;
  out.targets.push_back({system.gradient, false});
  out.field = [system](const Vector& x, std::span<const Vector> aux) -> Vector {
    return system.structure(x) * aux[0];
  };
  return out;
}

StepResult step_conservative(const ConservativeSystem& system, const Vector& x, double dt,
                             int stages, const IntegralOperator& op, const NewtonOptions& newton) {
  const AuxiliaryStepper stepper(conservative_field(system), op, stages, newton);
  return stepper.step(x, 0.0, dt, true);
}

Vector step_poisson_conservative(const PoissonSystem& system, const Vector& x, double dt,
                                 int stages, const IntegralOperator& op,
                                 const NewtonOptions& newton) {
  const AuxiliaryStepper stepper(poisson_field(system), op, stages, newton);
  return stepper.step(x, 0.0, dt).state;
}

}  // namespace avint
