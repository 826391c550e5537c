/**
 * @file errors.hpp
 * @brief Exception types raised by the integrators and problem definitions.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avint {

/// Invalid argument to a library routine (out-of-range stage count, bad rule, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nonlinear solve did not reach tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual_norm, int iterations)
      : std::runtime_error(what), residual_norm_(residual_norm), iterations_(iterations) {}

  [[nodiscard]] double residual_norm() const noexcept { return residual_norm_; }
  [[nodiscard]] int iterations() const noexcept { return iterations_; }

 private:
  double residual_norm_;
  int iterations_;
};

/// Nonlinear solve produced a non-finite residual.
class DivergenceError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// State outside the domain of a model: nonpositive volume or temperature, orbit singularity, ...
/// Newton's line search treats this as a rejected trial point.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Alternating-form construction hit a (nearly) degenerate configuration.
class DegeneracyError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input data violate a structural premise (orthogonality, skew-symmetry, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A time step failed; carries the zero-based index of the failing step.
class StepError : public std::runtime_error {
 public:
  StepError(std::size_t step_index, const std::string& cause)
      : std::runtime_error("step " + std::to_string(step_index) + " failed: " + cause),
        step_index_(step_index) {}

  [[nodiscard]] std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

}  // namespace avint
