#include "avint/ode/baselines.hpp"

#include <utility>

#include "avint/core/errors.hpp"

namespace avint {

Vector step_implicit_midpoint(const VectorField& f, const Vector& x, double dt,
                              const NewtonOptions& newton) {
  const auto residual = [&](const Vector& next) -> Vector {
    return next - x - dt * f(0.5 * (x + next));
  };
  return newton_solve(residual, std::nullopt, x, newton).solution;
}

AuxiliaryStepper gauss_stepper(const VectorField& f, int stages, const NewtonOptions& newton) {
  AuxiliaryField field;
  field.field = [f](const Vector& x, std::span<const Vector>) { return f(x); };
  return AuxiliaryStepper(std::move(field), IntegralOperator::gauss(stages), stages, newton);
}

Vector step_gauss(const VectorField& f, const Vector& x, double dt, int stages,
                  const NewtonOptions& newton) {
  return gauss_stepper(f, stages, newton).step(x, 0.0, dt).state;
}

Vector step_mean_value_dg(const PoissonSystem& system, const Vector& x, double dt,
                          const QuadratureRule& reference, const NewtonOptions& newton) {
  const Matrix b = system.structure(x);
  const auto residual = [&](const Vector& next) -> Vector {
    Vector mean = Vector::Zero(x.size());
    for (std::size_t q = 0; q < reference.size(); ++q) {
      const double xi = reference.nodes()[q];
      mean += reference.weights()[q] * system.gradient(xi * next + (1.0 - xi) * x);
    }
    return next - x - dt * b * mean;
  };
  return newton_solve(residual, std::nullopt, x, newton).solution;
}

}  // namespace avint
