#include "wpcn/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "wpcn/errors.hpp"

namespace wpcn {

double path_gain(double l, double alpha) {
  if (!(l >= 0.0)) throw DomainError("path_gain: distance must be non-negative");
  return 1.0 / (1.0 + std::pow(l, alpha));
}

PsiBreaks psi_breakpoints(double t_e, double t_i) noexcept {
  const double k = t_e - t_i;
  return PsiBreaks{{-t_i, std::min(0.0, k), std::max(0.0, k), t_e}};
}

}  // namespace wpcn
