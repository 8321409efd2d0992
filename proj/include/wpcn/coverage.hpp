#pragma once

#include "wpcn/numerics.hpp"
#include "wpcn/params.hpp"

namespace wpcn {

/// Network (for interference) or link (for the typical receiver).
enum class Link { kPrimary, kSecondary };

const char* to_string(Link link) noexcept;

/// Closed-form Laplace transform of the time-averaged interference of one
/// TS-PPP with density `lambda` and per-node power `power`:
/// exp(-2 lambda pi^2 T_I csc(2pi/alpha) [(1+x)^(2/alpha)(2x-alpha)+alpha] / (x(2+alpha))),
/// x = power * s. Small x uses the series of the bracket to avoid cancellation.
double laplace_closed_form(double s, double lambda, double power, double t_i, double alpha);

/// The same transform by direct double quadrature of the PGFL exponent
/// 2 pi lambda int_{-T_I}^{T_I} int_0^inf (1 - 1/(1 + s P chi(t) (1+u^alpha)^-1)) u du dt.
double laplace_integral_form(double s, double lambda, double power, double t_i, double alpha,
                             const QuadratureSpec& spec = {});

/// Second moment factor of the conditional coverage:
/// exp(-4 pi lambda int_0^{T_I} int_0^inf (1 - (1 + s P chi (1+u^alpha)^-1)^-2) u du dt).
double laplace_second_moment_form(double s, double lambda, double power, double t_i,
                                  double alpha, const QuadratureSpec& spec = {});

/// The three multiplicative pieces of a coverage probability.
struct CoverageFactors {
  double s = 0.0;
  double laplace_primary = 1.0;
  double laplace_secondary = 1.0;
  double noise = 1.0;
  double product() const noexcept { return laplace_primary * laplace_secondary * noise; }
};

/// Link-level analysis for both networks: interference transforms, SINR
/// coverage and spatial throughput. Secondary interferers form an
/// independent PPP of density lambda2_active transmitting with power p2.
class LinkAnalysis {
 public:
  LinkAnalysis(SystemParams params, double p2, double lambda2_active, QuadratureSpec quad = {});

  /// Computes P2 and lambda2_active from the energy and access analyses.
  static LinkAnalysis build(const SystemParams& params, const QuadratureSpec& quad = {});

  const SystemParams& params() const noexcept { return params_; }
  double p2() const noexcept { return p2_; }
  double lambda2_active() const noexcept { return lambda2_active_; }
  const QuadratureSpec& quad() const noexcept { return quad_; }

  double density(Link network) const noexcept;
  double power(Link network) const noexcept;

  /// s = zeta (1 + d^alpha) / P_link. Throws SecondaryUnpowered if P2 = 0.
  double scale(double zeta, Link link) const;

  double laplace_closed(double s, Link network) const;
  double laplace_numeric(double s, Link network) const;

  CoverageFactors coverage_factors(double zeta, Link link) const;
  /// P(SINR_link >= zeta) = L_I1(s) L_I2(s) exp(-sigma^2 s).
  double coverage_prob(double zeta, Link link) const;
  /// T_I R(zeta) lambda_n p_n^c(zeta).
  double spatial_throughput(double zeta, Link network) const;

 private:
  SystemParams params_;
  double p2_;
  double lambda2_active_;
  QuadratureSpec quad_;
};

}  // namespace wpcn
