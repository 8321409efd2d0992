#pragma once

#include <complex>

#include "wpcn/numerics.hpp"
#include "wpcn/params.hpp"

namespace wpcn {

/// How the radial integral inside the characteristic function is evaluated.
enum class InnerIntegral {
  kClosedForm,  ///< c^(2/alpha - 1) (pi/alpha) csc(2 pi/alpha), c = 1 - i z P1 psi
  kQuadrature,  ///< semi-infinite adaptive quadrature
};

/// Distribution of the energy E_H harvested by a secondary transmitter over
/// [0, T_E] from the primary TS-PPP.
class EnergyLaw {
 public:
  explicit EnergyLaw(SystemParams params, QuadratureSpec quad = {},
                     InnerIntegral inner = InnerIntegral::kClosedForm);

  const SystemParams& params() const noexcept { return params_; }

  /// E[exp(i z E_H)].
  std::complex<double> char_fn(double z) const;
  std::complex<double> char_fn(double z, InnerIntegral inner) const;

  /// P(E_H > threshold) by Gil-Pelaez inversion of char_fn.
  double energy_ccdf(double threshold) const;
  InversionResult energy_ccdf_detailed(double threshold) const;

  /// E[E_H] = 2 pi^2 lambda1 T_E T_I (P1 / alpha) csc(2 pi / alpha).
  double mean_harvested_energy() const;

  /// Average secondary transmit power
  /// E[E_H]/T_I (pi(eps) - pi(E_sat)) + (E_sat/T_I) pi(E_sat).
  double avg_secondary_power() const;
  /// Same, reusing already computed pi(eps) and pi(E_sat).
  double avg_secondary_power(double pi_eps, double pi_sat) const;

 private:
  std::complex<double> exponent(double z, InnerIntegral inner) const;

  SystemParams params_;
  QuadratureSpec quad_;
  InnerIntegral inner_;
};

/// (pi/alpha) csc(2 pi/alpha) = int_0^inf u / (1 + u^alpha) du.
double radial_constant(double alpha);

}  // namespace wpcn
