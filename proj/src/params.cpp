#include "wpcn/params.hpp"

#include <cmath>
#include <string>

#include "wpcn/errors.hpp"

namespace wpcn {
namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

SystemParams::SystemParams(const ParamValues& v) : v_(v) {
  require(finite(v.alpha) && v.alpha > 2.0, "alpha must exceed 2");
  require(finite(v.lambda1) && v.lambda1 >= 0.0, "lambda1 must be non-negative");
  require(finite(v.lambda2) && v.lambda2 >= 0.0, "lambda2 must be non-negative");
  require(finite(v.p1) && v.p1 > 0.0, "p1 must be positive");
  require(finite(v.t_i) && v.t_i > 0.0, "t_i must be positive");
  require(finite(v.t_e) && v.t_e > 0.0, "t_e must be positive");
  require(finite(v.d) && v.d > 0.0, "d must be positive");
  require(finite(v.sigma2) && v.sigma2 >= 0.0, "sigma2 must be non-negative");
  require(finite(v.rho) && v.rho >= 0.0, "rho must be non-negative");
  require(finite(v.epsilon) && v.epsilon > 0.0, "epsilon must be positive");
  require(finite(v.e_sat) && v.e_sat > v.epsilon, "e_sat must exceed epsilon");
  require(finite(v.zeta) && v.zeta > 0.0, "zeta must be positive");
  if (v.rate) require(finite(*v.rate) && *v.rate >= 0.0, "rate must be non-negative");
}

double SystemParams::rate_at(double zeta) const {
  return v_.rate ? *v_.rate : std::log2(1.0 + zeta);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace wpcn
