#include "avint/core/integral_operator.hpp"

#include <utility>

namespace avint {

IntegralOperator::IntegralOperator(Kind kind, QuadratureRule rule, QuadratureRule reference)
    : kind_(kind), rule_(std::move(rule)), reference_(std::move(reference)) {}

IntegralOperator IntegralOperator::stage_quadrature(QuadratureRule rule, QuadratureRule reference) {
  return IntegralOperator(Kind::kStageQuadrature, std::move(rule), std::move(reference));
}

IntegralOperator IntegralOperator::gauss(int stages, int reference_stages) {
  return stage_quadrature(gauss_legendre_rule(stages), gauss_legendre_rule(reference_stages));
}

IntegralOperator IntegralOperator::exact(QuadratureRule reference) {
  QuadratureRule rule = reference;
  return IntegralOperator(Kind::kExact, std::move(rule), std::move(reference));
}

double IntegralOperator::apply(double dt, const std::function<double(double)>& integrand) const {
  return dt * rule_.integrate(integrand);
}

double IntegralOperator::integrate_reference(double dt,
                                             const std::function<double(double)>& integrand) const {
  return dt * reference_.integrate(integrand);
}

}  // namespace avint
