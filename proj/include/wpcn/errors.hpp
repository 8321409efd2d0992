#pragma once

#include <stdexcept>
#include <string>

namespace wpcn {

/// Invalid model parameter or out-of-domain argument.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature or inversion routine ran out of budget. Carries the best
/// estimate reached so far and its error estimate.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double estimate, double error,
                 double estimate_imag = 0.0)
      : std::runtime_error(what), estimate_(estimate), imag_(estimate_imag), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  /// Imaginary part of the estimate for complex-valued integrals.
  double estimate_imag() const noexcept { return imag_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double estimate_;
  double imag_;
  double error_;
};

/// Secondary link requested while the average secondary power is zero.
class SecondaryUnpowered : public std::runtime_error {
 public:
  SecondaryUnpowered()
      : std::runtime_error("secondary transmit power is zero; secondary link undefined") {}
};

/// Moment pair cannot be matched by a non-degenerate Beta law.
class DegenerateDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerically computed moments violate m1^2 <= m2 <= m1.
class MomentViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration (bad key, bad value, missing key).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wpcn
