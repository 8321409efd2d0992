#pragma once

#include "wpcn/coverage.hpp"

namespace wpcn {

/// First two moments of the conditional coverage probability and the
/// shapes of the Beta law matched to them. Shapes are zero until matched.
struct BetaMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// Second-moment transform of one network's interference at s.
double laplace_second_moment(const LinkAnalysis& analysis, double s, Link network);

/// m1 = coverage probability; m2 = product of second-moment transforms times
/// exp(-2 sigma^2 s). Throws MomentViolation if m1^2 <= m2 <= m1 fails by
/// more than 1e-9.
BetaMoments conditional_moments(const LinkAnalysis& analysis, double zeta, Link link);

struct BetaShapes {
  double gamma;
  double delta;
};

/// Matches Beta(gamma, delta) to (m1, m2). Throws DegenerateDistribution when
/// the variance m2 - m1^2 or the gap m1 - m2 is not positive (below 1e-12).
BetaShapes beta_match(double m1, double m2);

/// Beta-approximated SINR meta distribution for one (zeta, link) pair.
/// Degenerate moment pairs fall back to the step 1{x < m1}.
class MetaDistribution {
 public:
  MetaDistribution(const LinkAnalysis& analysis, double zeta, Link link);
  /// Builds directly from moments (used by tests and sweeps).
  explicit MetaDistribution(double m1, double m2);

  /// F(x) = P(q > x) = 1 - I_x(gamma, delta).
  double ccdf(double x) const;

  const BetaMoments& moments() const noexcept { return moments_; }
  bool degenerate() const noexcept { return degenerate_; }

 private:
  void match();

  BetaMoments moments_;
  bool degenerate_ = false;
};

/// Convenience: MetaDistribution(analysis, zeta, link).ccdf(x).
double meta_distribution(const LinkAnalysis& analysis, double x, double zeta, Link link);

}  // namespace wpcn
