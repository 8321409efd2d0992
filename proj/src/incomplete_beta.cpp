#include <boost/math/special_functions/beta.hpp>

#include "wpcn/errors.hpp"
#include "wpcn/numerics.hpp"

namespace wpcn {

double regularized_incomplete_beta(double x, double gamma, double delta) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("regularized_incomplete_beta: x outside [0, 1]");
  if (!(gamma > 0.0) || !(delta > 0.0))
    throw DomainError("regularized_incomplete_beta: shapes must be positive");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return boost::math::ibeta(gamma, delta, x);
}

}  // namespace wpcn
