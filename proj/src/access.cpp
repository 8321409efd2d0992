#include "wpcn/access.hpp"

#include <cmath>
#include <numbers>

namespace wpcn {

double guard_zone_void_prob(const SystemParams& p) {
  return std::exp(-p.lambda1() * p.t_i() * std::numbers::pi * p.rho() * p.rho());
}

AccessResult analyze_access(const EnergyLaw& energy) {
  const SystemParams& p = energy.params();
  AccessResult r;
  r.pi_rho = guard_zone_void_prob(p);
  r.pi_eps = energy.energy_ccdf(p.epsilon());
  r.pi_s = r.pi_eps * r.pi_rho;
  r.lambda2_active = p.lambda2() * r.pi_s;
  return r;
}

double transmit_prob(const EnergyLaw& energy) { return analyze_access(energy).pi_s; }

double active_secondary_density(const EnergyLaw& energy) {
  return analyze_access(energy).lambda2_active;
}

}  // namespace wpcn
