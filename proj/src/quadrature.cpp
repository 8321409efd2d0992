#include "wpcn/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wpcn {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("QuadratureSpec: tolerances must be positive");
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

namespace detail {

const Gk21& gk21() noexcept {
  static const Gk21 rule = [] {
    Gk21 r{};
    const auto& x = boost::math::quadrature::gauss_kronrod<double, 21>::abscissa();
    const auto& wk = boost::math::quadrature::gauss_kronrod<double, 21>::weights();
    const auto& wg = boost::math::quadrature::gauss<double, 10>::weights();
    for (int i = 0; i < 11; ++i) {
      r.x[i] = x[i];
      r.wk[i] = wk[i];
    }
    for (int i = 0; i < 5; ++i) r.wg[i] = wg[i];
    return r;
  }();
  return rule;
}

}  // namespace detail
}  // namespace wpcn
