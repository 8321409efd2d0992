#pragma once

// Monte Carlo oracle for the asynchronous primary / wireless-powered
// secondary network.
//
// Every estimator splits its samples across `SimWindow::replicates`
// independent RNG streams derived from `master_seed`. Replicates run either
// serially (reference path) or under OpenMP; per-replicate partial results
// are reduced in replicate order, so both paths give bit-identical output.
//
// Points farther than `disk_radius` from the observer are not sampled; their
// mean contribution (interference or harvested energy) is added
// deterministically. The neglected far-field variance scales as R^(2-2 alpha).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wpcn/coverage.hpp"
#include "wpcn/params.hpp"

namespace wpcn::mc {

enum class Exec { kSerial, kParallel };

/// One point of a TS-PPP realization.
struct TsPoint {
  double x = 0.0;
  double y = 0.0;
  double epoch = 0.0;
  double fade = 1.0;  ///< channel power gain toward the observer, unit mean
};

struct SimWindow {
  double disk_radius = 25.0;
  double t_min = -0.5;
  double t_max = 0.5;
  std::size_t replicates = 64;
  std::uint64_t master_seed = 20190101;

  void validate() const;
};

enum class FadingKind { kRayleigh, kRician };

struct FadingSpec {
  FadingKind kind = FadingKind::kRayleigh;
  double k_factor = 0.0;  ///< Rician K (ignored for Rayleigh)

  void validate() const;
  static FadingSpec rayleigh() { return {}; }
  static FadingSpec rician(double k) { return {FadingKind::kRician, k}; }
};

/// Estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Counter-style stream: one generator per (seed, salt, index) triple.
std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t salt, std::uint64_t index);

/// Unit-mean power gain draw.
double draw_fade(std::mt19937_64& rng, const FadingSpec& fading);

/// Homogeneous TS-PPP on the disk of radius window.disk_radius over epochs
/// [t_min, t_max]: Poisson count, uniform positions, uniform epochs, fades
/// per `fading`.
std::vector<TsPoint> sample_tsppp(double density, const SimWindow& window, std::mt19937_64& rng,
                                  const FadingSpec& fading = {});

/// int_R^inf r (1 + r^alpha)^-1 dr.
double radial_tail(double radius, double alpha);

// ---------------------------------------------------------------- energy

/// Samples of E_H = P1 sum h_x (1 + r_x^alpha)^-1 psi(t_x) at a harvester at
/// the origin (epochs on [-T_I, T_E]).
std::vector<double> simulate_energy(const SystemParams& params, const SimWindow& window,
                                    std::size_t n_samples, Exec exec = Exec::kParallel);

Estimate sample_mean(std::span<const double> samples);
/// Fraction of samples strictly above `threshold`.
Estimate empirical_ccdf(std::span<const double> samples, double threshold);
/// E[exp(i z X)] from samples (real and imaginary parts).
std::complex<double> empirical_char_fn(std::span<const double> samples, double z);

// ---------------------------------------------------------------- access

/// Probability that no active primary receiver (transmitter displaced by d
/// at a uniform angle) lies within rho of the origin at the decision instant.
Estimate simulate_guard_void(const SystemParams& params, const SimWindow& window, std::size_t n_samples,
                             Exec exec = Exec::kParallel);

struct AccessEstimate {
  Estimate pi_eps;     ///< P(E_H > epsilon)
  Estimate pi_rho;     ///< P(guard zone empty at the decision instant)
  Estimate pi_s;       ///< P(both), measured jointly on the same primaries
  Estimate mean_power; ///< E[p]: 0, mean(E_H)/T_I or E_sat/T_I by tier
};

/// A secondary awakes at 0, harvests over [0, T_E] and senses at T_E, both
/// against one realization of the primary TS-PPP.
AccessEstimate simulate_access(const SystemParams& params, const SimWindow& window, std::size_t n_samples,
                               Exec exec = Exec::kParallel);

// ---------------------------------------------------------------- coverage

struct CoverageSimOptions {
  FadingSpec fading;                 ///< desired-link fading
  bool rician_interferers = false;   ///< apply `fading` to interferer links as well
  bool coupled = false;              ///< secondaries apply energy/guard rules against sampled primaries
  bool realized_power = false;       ///< coupled only: each active secondary uses its own p(E_H)
  double energy_radius = 10.0;       ///< coupled only: explicit harvesting neighbourhood [m]
};

/// Coverage at several thresholds from one set of geometries.
std::vector<Estimate> simulate_coverage_curve(const LinkAnalysis& analysis, std::span<const double> zetas,
                                              Link link, const SimWindow& window, std::size_t n_samples,
                                              const CoverageSimOptions& options = {},
                                              Exec exec = Exec::kParallel);

/// P(SINR_link >= zeta) at the typical receiver. Rayleigh desired links use
/// the conditional (product-form) estimator; otherwise fades are sampled.
Estimate simulate_coverage(const LinkAnalysis& analysis, double zeta, Link link, const SimWindow& window,
                           std::size_t n_samples, const CoverageSimOptions& options = {},
                           Exec exec = Exec::kParallel);

/// E[exp(-s I_n)] for one network's time-averaged interference, fades sampled.
Estimate simulate_laplace(const LinkAnalysis& analysis, double s, Link network, const SimWindow& window,
                          std::size_t n_samples, Exec exec = Exec::kParallel);

/// E[prod (1 + s P chi (1 + r^alpha)^-1)^-2] for one network.
Estimate simulate_second_moment(const LinkAnalysis& analysis, double s, Link network,
                                const SimWindow& window, std::size_t n_samples,
                                Exec exec = Exec::kParallel);

// ---------------------------------------------------------------- meta

/// Conditional coverage values, one per geometry, sorted ascending.
struct MetaSample {
  std::vector<double> q;

  /// Empirical P(q > x).
  double ccdf(double x) const;
  double moment(int k) const;
  /// sup_x |empirical CDF - model CDF| with model CDF given as 1 - F(x).
  template <class Ccdf>
  double ks_distance(Ccdf&& model_ccdf) const;
};

/// Conditional coverage per geometry. Rayleigh links use the exact product
/// form; otherwise each value averages `n_fading` fading draws.
MetaSample simulate_meta(const LinkAnalysis& analysis, double zeta, Link link, const SimWindow& window,
                         std::size_t n_geometry, std::size_t n_fading = 1,
                         const CoverageSimOptions& options = {}, Exec exec = Exec::kParallel);

template <class Ccdf>
double MetaSample::ks_distance(Ccdf&& model_ccdf) const {
  const std::size_t n = q.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double model_cdf = 1.0 - model_ccdf(q[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(model_cdf - lo), std::abs(hi - model_cdf)});
  }
  return d;
}

}  // namespace wpcn::mc
