#include "wpcn/meta.hpp"

#include <cmath>

#include "wpcn/errors.hpp"
#include "wpcn/numerics.hpp"

namespace wpcn {

namespace {
constexpr double kDegenerateGap = 1e-12;
constexpr double kMomentSlack = 1e-9;
}  // namespace

double laplace_second_moment(const LinkAnalysis& a, double s, Link n) {
  return laplace_second_moment_form(s, a.density(n), a.power(n), a.params().t_i(), a.params().alpha(),
                                    a.quad());
}

BetaMoments conditional_moments(const LinkAnalysis& a, double zeta, Link link) {
  const CoverageFactors f = a.coverage_factors(zeta, link);
  BetaMoments m;
  m.m1 = f.product();
  m.m2 = laplace_second_moment(a, f.s, Link::kPrimary) * laplace_second_moment(a, f.s, Link::kSecondary) *
         f.noise * f.noise;
  if (m.m1 * m.m1 > m.m2 + kMomentSlack || m.m2 > m.m1 + kMomentSlack) {
    throw MomentViolation("conditional moments violate m1^2 <= m2 <= m1: m1=" + std::to_string(m.m1) +
                          " m2=" + std::to_string(m.m2));
  }
  return m;
}

BetaShapes beta_match(double m1, double m2) {
  if (!(m1 > 0.0 && m1 < 1.0)) throw DegenerateDistribution("beta_match: m1 must lie in (0, 1)");
  const double var = m2 - m1 * m1;
  const double gap = m1 - m2;
  if (!(var > kDegenerateGap)) throw DegenerateDistribution("beta_match: zero variance");
  if (!(gap > kDegenerateGap)) throw DegenerateDistribution("beta_match: mass at the boundary");
  const double denom = m1 * m1 - m2;
  return {(m1 * m2 - m1 * m1) / denom, (1.0 - m1) * (m2 - m1) / denom};
}

MetaDistribution::MetaDistribution(const LinkAnalysis& analysis, double zeta, Link link)
    : moments_(conditional_moments(analysis, zeta, link)) {
  match();
}

MetaDistribution::MetaDistribution(double m1, double m2) {
  moments_.m1 = m1;
  moments_.m2 = m2;
  match();
}

void MetaDistribution::match() {
  try {
    const BetaShapes s = beta_match(moments_.m1, moments_.m2);
    moments_.gamma = s.gamma;
    moments_.delta = s.delta;
    degenerate_ = false;
  } catch (const DegenerateDistribution&) {
    degenerate_ = true;
  }
}

double MetaDistribution::ccdf(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("meta_distribution: x outside [0, 1]");
  if (degenerate_) return x < moments_.m1 ? 1.0 : 0.0;
  return 1.0 - regularized_incomplete_beta(x, moments_.gamma, moments_.delta);
}

double meta_distribution(const LinkAnalysis& analysis, double x, double zeta, Link link) {
  return MetaDistribution(analysis, zeta, link).ccdf(x);
}

}  // namespace wpcn
