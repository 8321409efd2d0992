#pragma once

#include "wpcn/energy.hpp"
#include "wpcn/params.hpp"

namespace wpcn {

struct AccessResult {
  double pi_rho = 1.0;          ///< empty guard zone probability
  double pi_eps = 0.0;          ///< energy coverage at epsilon
  double pi_s = 0.0;            ///< transmit probability pi_eps * pi_rho
  double lambda2_active = 0.0;  ///< lambda2 * pi_s
};

/// exp(-lambda1 T_I pi rho^2).
double guard_zone_void_prob(const SystemParams& p);

/// pi(eps) * pi_rho, using the supplied energy law for pi(eps).
double transmit_prob(const EnergyLaw& energy);

/// lambda2 * transmit_prob.
double active_secondary_density(const EnergyLaw& energy);

/// All access quantities from a single pi(eps) evaluation.
AccessResult analyze_access(const EnergyLaw& energy);

}  // namespace wpcn
