#include "wpcn/coverage.hpp"

#include <cmath>
#include <numbers>

#include "wpcn/access.hpp"
#include "wpcn/energy.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/kernels.hpp"

namespace wpcn {
namespace {

constexpr double kPi = std::numbers::pi;

// [(1+x)^b (2x - a) + a] / x with b = 2/a, by its power series for small x.
// Coefficient of x^(k-1) is 2 C(b, k-1) - a C(b, k); the k = 1 term vanishes.
double bracket_over_x_series(double x, double a) {
  const double b = 2.0 / a;
  double binom_prev = 1.0;  // C(b, 0)
  double binom = b;         // C(b, 1)
  double xp = 1.0;          // x^(k-1) at k = 1
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    binom_prev = binom;
    binom = binom * (b - (k - 1)) / k;
    xp *= x;
    const double term = (2.0 * binom_prev - a * binom) * xp;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

QuadratureSpec tight(const QuadratureSpec& base) {
  QuadratureSpec s = base;
  s.abs_tol = std::min(base.abs_tol, 1e-12);
  s.rel_tol = std::min(base.rel_tol, 1e-10);
  s.max_subdivisions = std::max(base.max_subdivisions, 4000);
  return s;
}

// 2 pi int_T int_0^inf h(s P chi(t) (1+u^alpha)^-1) u du dt for the given
// t-range, with h the PGFL kernel.
template <class Kernel>
double pgfl_integral(double s, double power, double t_i, double alpha, double t_lo, double t_hi,
                     const QuadratureSpec& spec, Kernel kernel) {
  const double a0 = s * power;
  auto inner = [&](double t) {
    const double a = a0 * chi(t, t_i);
    if (a == 0.0) return 0.0;
    auto f = [&](double u) { return kernel(a, 1.0 + std::pow(u, alpha)) * u; };
    return integrate_algebraic_tail(f, alpha - 1.0, spec).value;
  };
  std::vector<double> pts;
  pts.push_back(t_lo);
  if (t_lo < 0.0 && t_hi > 0.0) pts.push_back(0.0);
  pts.push_back(t_hi);
  return 2.0 * kPi * integrate_split(inner, pts, spec).value;
}

}  // namespace

const char* to_string(Link link) noexcept {
  return link == Link::kPrimary ? "primary" : "secondary";
}

double laplace_closed_form(double s, double lambda, double power, double t_i, double alpha) {
  if (!(s >= 0.0)) throw DomainError("laplace: s must be non-negative");
  const double x = power * s;
  if (lambda == 0.0 || x == 0.0) return 1.0;
  double bracket_over_x;
  if (x < 0.05) {
    bracket_over_x = bracket_over_x_series(x, alpha);
  } else {
    bracket_over_x = (std::pow(1.0 + x, 2.0 / alpha) * (2.0 * x - alpha) + alpha) / x;
  }
  const double csc = 1.0 / std::sin(2.0 * kPi / alpha);
  return std::exp(-2.0 * lambda * kPi * kPi * t_i * csc * bracket_over_x / (2.0 + alpha));
}

double laplace_integral_form(double s, double lambda, double power, double t_i, double alpha,
                             const QuadratureSpec& spec) {
  if (!(s >= 0.0)) throw DomainError("laplace: s must be non-negative");
  if (lambda == 0.0 || s * power == 0.0) return 1.0;
  // 1 - 1/(1 + a/g) = a / (g + a), g = 1 + u^alpha
  auto kernel = [](double a, double g) { return a / (g + a); };
  return std::exp(-lambda * pgfl_integral(s, power, t_i, alpha, -t_i, t_i, tight(spec), kernel));
}

double laplace_second_moment_form(double s, double lambda, double power, double t_i, double alpha,
                                  const QuadratureSpec& spec) {
  if (!(s >= 0.0)) throw DomainError("laplace: s must be non-negative");
  if (lambda == 0.0 || s * power == 0.0) return 1.0;
  // 1 - (g / (g + a))^2 = a (2g + a) / (g + a)^2
  auto kernel = [](double a, double g) {
    const double ga = g + a;
    return a * (2.0 * g + a) / (ga * ga);
  };
  // 4 pi lambda over [0, T_I] = 2 * (2 pi lambda over [0, T_I])
  return std::exp(-2.0 * lambda * pgfl_integral(s, power, t_i, alpha, 0.0, t_i, tight(spec), kernel));
}

LinkAnalysis::LinkAnalysis(SystemParams params, double p2, double lambda2_active, QuadratureSpec quad)
    : params_(std::move(params)), p2_(p2), lambda2_active_(lambda2_active), quad_(quad) {
  if (!(p2 >= 0.0) || !std::isfinite(p2)) throw DomainError("LinkAnalysis: p2 must be non-negative");
  if (!(lambda2_active >= 0.0) || lambda2_active > params_.lambda2() * (1.0 + 1e-12))
    throw DomainError("LinkAnalysis: lambda2_active must lie in [0, lambda2]");
  quad_.validate();
}

LinkAnalysis LinkAnalysis::build(const SystemParams& params, const QuadratureSpec& quad) {
  const EnergyLaw energy(params, quad);
  const double pi_eps = energy.energy_ccdf(params.epsilon());
  const double pi_sat = energy.energy_ccdf(params.e_sat());
  const double pi_s = pi_eps * guard_zone_void_prob(params);
  return LinkAnalysis(params, energy.avg_secondary_power(pi_eps, pi_sat), params.lambda2() * pi_s,
                      quad);
}

double LinkAnalysis::density(Link n) const noexcept {
  return n == Link::kPrimary ? params_.lambda1() : lambda2_active_;
}

double LinkAnalysis::power(Link n) const noexcept {
  return n == Link::kPrimary ? params_.p1() : p2_;
}

double LinkAnalysis::scale(double zeta, Link link) const {
  if (!(zeta > 0.0)) throw DomainError("coverage: zeta must be positive");
  const double pw = power(link);
  if (pw <= 0.0) throw SecondaryUnpowered();
  return zeta * (1.0 + std::pow(params_.d(), params_.alpha())) / pw;
}

double LinkAnalysis::laplace_closed(double s, Link n) const {
  return laplace_closed_form(s, density(n), power(n), params_.t_i(), params_.alpha());
}

double LinkAnalysis::laplace_numeric(double s, Link n) const {
  return laplace_integral_form(s, density(n), power(n), params_.t_i(), params_.alpha(), quad_);
}

CoverageFactors LinkAnalysis::coverage_factors(double zeta, Link link) const {
  CoverageFactors f;
  f.s = scale(zeta, link);
  f.laplace_primary = laplace_closed(f.s, Link::kPrimary);
  f.laplace_secondary = laplace_closed(f.s, Link::kSecondary);
  f.noise = std::exp(-params_.sigma2() * f.s);
  return f;
}

double LinkAnalysis::coverage_prob(double zeta, Link link) const {
  return coverage_factors(zeta, link).product();
}

double LinkAnalysis::spatial_throughput(double zeta, Link n) const {
  if (n == Link::kSecondary && !(p2_ > 0.0)) throw SecondaryUnpowered();
  const double lam = density(n);
  if (lam == 0.0) return 0.0;
  return params_.t_i() * params_.rate_at(zeta) * lam * coverage_prob(zeta, n);
}

}  // namespace wpcn
