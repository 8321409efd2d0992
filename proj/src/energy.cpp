#include "wpcn/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wpcn/errors.hpp"
#include "wpcn/kernels.hpp"

namespace wpcn {
namespace {

using cd = std::complex<double>;

// Tolerances for the nested integrals inside the exponent of F(z). Tighter
// than the inversion tolerance so the exponent error does not leak into pi(eps).
QuadratureSpec inner_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-14;
  s.rel_tol = 1e-11;
  s.max_subdivisions = 4000;
  return s;
}

}  // namespace

double radial_constant(double alpha) {
  return (std::numbers::pi / alpha) / std::sin(2.0 * std::numbers::pi / alpha);
}

EnergyLaw::EnergyLaw(SystemParams params, QuadratureSpec quad, InnerIntegral inner)
    : params_(std::move(params)), quad_(quad), inner_(inner) {
  quad_.validate();
}

cd EnergyLaw::exponent(double z, InnerIntegral inner) const {
  const double lambda = params_.lambda1();
  if (lambda == 0.0 || z == 0.0) return {0.0, 0.0};
  const double alpha = params_.alpha();
  const double t_e = params_.t_e();
  const double t_i = params_.t_i();
  const double zp = z * params_.p1();
  const double kappa = radial_constant(alpha);
  const double beta = 2.0 / alpha - 1.0;
  const QuadratureSpec spec = inner_spec();

  // radial integral: int_0^inf i b u / (1 + u^alpha - i b) du
  auto radial = [&](double b) -> cd {
    if (b == 0.0) return {0.0, 0.0};
    const cd ib(0.0, b);
    if (inner == InnerIntegral::kClosedForm) return ib * std::pow(1.0 - ib, beta) * kappa;
    auto f = [&](double u) -> cd { return ib * u / (1.0 + std::pow(u, alpha) - ib); };
    return integrate_algebraic_tail(f, alpha - 1.0, spec).value;
  };

  auto over_t = [&](double t) -> cd { return radial(zp * psi(t, t_e, t_i)); };
  const PsiBreaks br = psi_breakpoints(t_e, t_i);
  const std::vector<double> pts(br.pts, br.pts + 4);
  const cd integral = integrate_split(over_t, pts, spec).value;
  return 2.0 * std::numbers::pi * lambda * integral;
}

cd EnergyLaw::char_fn(double z) const { return char_fn(z, inner_); }

cd EnergyLaw::char_fn(double z, InnerIntegral inner) const {
  return std::exp(exponent(z, inner));
}

InversionResult EnergyLaw::energy_ccdf_detailed(double threshold) const {
  if (!(threshold > 0.0)) throw DomainError("energy_ccdf: threshold must be positive");
  if (params_.lambda1() == 0.0) return InversionResult{0.0, 0.0, 0.0, 0, false};
  CharacteristicFn f = [this](double z) { return char_fn(z); };
  return gil_pelaez_invert(f, threshold, quad_);
}

double EnergyLaw::energy_ccdf(double threshold) const {
  return energy_ccdf_detailed(threshold).probability;
}

double EnergyLaw::mean_harvested_energy() const {
  return 2.0 * std::numbers::pi * params_.lambda1() * params_.t_e() * params_.t_i() * params_.p1() *
         radial_constant(params_.alpha());
}

double EnergyLaw::avg_secondary_power(double pi_eps, double pi_sat) const {
  const double t_i = params_.t_i();
  const double middle = std::max(0.0, pi_eps - pi_sat);
  return mean_harvested_energy() / t_i * middle + params_.e_sat() / t_i * pi_sat;
}

double EnergyLaw::avg_secondary_power() const {
  return avg_secondary_power(energy_ccdf(params_.epsilon()), energy_ccdf(params_.e_sat()));
}

}  // namespace wpcn
