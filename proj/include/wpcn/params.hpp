#pragma once

#include <optional>

namespace wpcn {

/// Raw parameter values in SI units. Validation happens when a
/// SystemParams is built from them.
struct ParamValues {
  double lambda1 = 0.1;   ///< primary space-time density [1/(m^2 s)]
  double lambda2 = 1.0;   ///< secondary space-time density [1/(m^2 s)]
  double p1 = 1.0;        ///< primary transmit power [W]
  double t_i = 0.5;       ///< information transmission duration [s]
  double t_e = 0.5;       ///< energy harvesting duration [s]
  double d = 1.0;         ///< pair separation [m]
  double alpha = 3.0;     ///< path-loss exponent
  double sigma2 = 1e-8;   ///< noise power [W] (-50 dBm)
  double epsilon = 0.1;   ///< energy activation threshold [J]
  double e_sat = 0.5;     ///< harvester saturation level [J]
  double rho = 2.0;       ///< guard-zone radius [m]
  double zeta = 0.1;      ///< SINR threshold (linear)
  std::optional<double> rate;  ///< spectral efficiency [bpcu]; defaults to log2(1 + zeta)

  bool operator==(const ParamValues&) const = default;
};

/// Immutable, validated model parameters. Every downstream computation
/// assumes the invariants checked here.
class SystemParams {
 public:
  /// Defaults used throughout the numerical results section.
  SystemParams() : SystemParams(ParamValues{}) {}
  explicit SystemParams(const ParamValues& values);

  const ParamValues& values() const noexcept { return v_; }

  double lambda1() const noexcept { return v_.lambda1; }
  double lambda2() const noexcept { return v_.lambda2; }
  double p1() const noexcept { return v_.p1; }
  double t_i() const noexcept { return v_.t_i; }
  double t_e() const noexcept { return v_.t_e; }
  double d() const noexcept { return v_.d; }
  double alpha() const noexcept { return v_.alpha; }
  double sigma2() const noexcept { return v_.sigma2; }
  double epsilon() const noexcept { return v_.epsilon; }
  double e_sat() const noexcept { return v_.e_sat; }
  double rho() const noexcept { return v_.rho; }
  double zeta() const noexcept { return v_.zeta; }

  /// Rate used for throughput at SINR threshold `zeta`.
  double rate_at(double zeta) const;
  double rate() const { return rate_at(v_.zeta); }

  /// Returns a copy with one field replaced via `edit`, re-validated.
  template <class Edit>
  SystemParams with(Edit&& edit) const {
    ParamValues v = v_;
    edit(v);
    return SystemParams(v);
  }

 private:
  ParamValues v_;
};

/// dBm to watts: 10^((dbm - 30) / 10).
double dbm_to_watts(double dbm);
/// dB to linear ratio.
double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace wpcn
