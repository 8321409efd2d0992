#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wpcn/access.hpp"
#include "wpcn/montecarlo.hpp"

using namespace wpcn;
using doctest::Approx;

TEST_CASE("guard zone void probability") {
  CHECK(guard_zone_void_prob(SystemParams{}) == Approx(std::exp(-0.2 * std::numbers::pi)).epsilon(1e-14));
  CHECK(guard_zone_void_prob(SystemParams{}) == Approx(0.5335).epsilon(1e-4));
  ParamValues v;
  v.rho = 0.0;
  CHECK(guard_zone_void_prob(SystemParams(v)) == 1.0);
  v = {};
  v.lambda1 = 0.0;
  CHECK(guard_zone_void_prob(SystemParams(v)) == 1.0);
}

TEST_CASE("guard zone void probability strictly decreasing") {
  double prev = 2.0;
  for (double rho : {0.5, 1.0, 2.0, 3.0}) {
    ParamValues v;
    v.rho = rho;
    const double g = guard_zone_void_prob(SystemParams(v));
    CHECK(g < prev);
    prev = g;
  }
  prev = 2.0;
  for (double l : {0.05, 0.1, 0.2}) {
    ParamValues v;
    v.lambda1 = l;
    const double g = guard_zone_void_prob(SystemParams(v));
    CHECK(g < prev);
    prev = g;
  }
  prev = 2.0;
  for (double ti : {0.1, 0.3, 0.5}) {
    ParamValues v;
    v.t_i = ti;
    const double g = guard_zone_void_prob(SystemParams(v));
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("transmit probability and active density") {
  const SystemParams p;
  EnergyLaw e{p};
  const auto r = analyze_access(e);
  CHECK(r.pi_s == Approx(r.pi_eps * r.pi_rho).epsilon(1e-15));
  CHECK(r.lambda2_active == Approx(p.lambda2() * r.pi_s).epsilon(1e-15));
  CHECK(r.pi_s <= std::min(r.pi_eps, r.pi_rho));
  CHECK(r.lambda2_active > 0.0);
  CHECK(r.lambda2_active < p.lambda2());
  CHECK(transmit_prob(e) == Approx(r.pi_s).epsilon(1e-14));
  CHECK(active_secondary_density(e) == Approx(r.lambda2_active).epsilon(1e-14));

  ParamValues v;
  v.rho = 0.0;
  EnergyLaw e0{SystemParams(v)};
  CHECK(transmit_prob(e0) == Approx(e0.energy_ccdf(0.1)).epsilon(1e-14));

  v = {};
  v.p1 = 1e-9;
  CHECK(transmit_prob(EnergyLaw{SystemParams(v)}) < 1e-3);

  double prev = 2.0;
  for (double rho : {0.0, 1.0, 2.0, 3.0}) {
    ParamValues w;
    w.rho = rho;
    const double s = transmit_prob(EnergyLaw{SystemParams(w)});
    CHECK(s <= prev);
    prev = s;
  }
}

TEST_CASE("simulated guard void matches the closed form") {
  mc::SimWindow w;
  for (double rho : {1.0, 2.0}) {
    for (double ti : {0.3, 0.5}) {
      ParamValues v;
      v.rho = rho;
      v.t_i = ti;
      const SystemParams p(v);
      const auto est = mc::simulate_guard_void(p, w, 200000);
      CHECK(std::abs(est.value - guard_zone_void_prob(p)) < 0.01);
    }
  }
  ParamValues v;
  v.rho = 0.0;
  CHECK(mc::simulate_guard_void(SystemParams(v), w, 1000).value == 1.0);
  v = {};
  v.lambda1 = 0.0;
  CHECK(mc::simulate_guard_void(SystemParams(v), w, 1000).value == 1.0);
}

TEST_CASE("joint access simulation") {
  const SystemParams p;
  const auto r = analyze_access(EnergyLaw{p});
  const auto acc = mc::simulate_access(p, mc::SimWindow{}, 200000);
  CHECK(std::abs(acc.pi_eps.value - r.pi_eps) < 0.01);
  CHECK(std::abs(acc.pi_rho.value - r.pi_rho) < 0.01);
  // The analysis multiplies the two marginals; the joint event is measured
  // on one realization. Nearby primaries both feed the harvester and block
  // it, so the joint probability sits clearly below the product.
  MESSAGE("pi_s analytic " << r.pi_s << " joint " << acc.pi_s.value << " +- " << acc.pi_s.std_error);
  CHECK(acc.pi_s.value < r.pi_s);
  CHECK(acc.pi_s.value <= std::min(acc.pi_eps.value, acc.pi_rho.value));
}
