#pragma once

#include <stdexcept>
#include <string>

namespace lovegeo {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// 1 - sdot^2 fell below the representable floor; the rotational curvature
// formulas are singular there and states beyond are rejected, not clamped.
struct DegenerateTangentError : DomainError {
  using DomainError::DomainError;
};

// Adaptive step control gave up; carries the last tau that was reached.
struct IntegrationError : std::runtime_error {
  double last_tau;
  IntegrationError(const std::string& what, double tau)
      : std::runtime_error(what), last_tau(tau) {}
};

// Boundary trace of a would-be horizon is not constant.
struct NotAHorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The D coefficient of the seam equation vanished (Jacobi operator degenerate).
struct EllipticityFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank-deficient or severely ill-conditioned least-squares system.
struct ConditioningError : std::runtime_error {
  double condition;
  explicit ConditioningError(const std::string& what, double cond = 0.0)
      : std::runtime_error(what), condition(cond) {}
};

// Fitted end data is not a valid asymptotically flat end (e.g. a <= 0).
struct InvalidEndError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mass-constant calibration failed its m-independence certificate.
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sweep member violates the sigma_2k >= 0 energy condition (c decreasing).
struct EnergyConditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lovegeo
