#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wpcn/montecarlo.hpp"

namespace wpcn::mc::detail {

// Stream salts; one per estimator so different estimators never share draws.
enum Salt : std::uint64_t {
  kSaltEnergy = 0x11,
  kSaltGuard = 0x22,
  kSaltAccess = 0x33,
  kSaltCoverage = 0x44,
  kSaltLaplace = 0x55,
  kSaltSecondMoment = 0x66,
  kSaltMeta = 0x77,
};

struct Moments {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++n;
  }
  void merge(const Moments& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    n += o.n;
  }
  Estimate estimate() const;
};

/// Samples [begin, end) handled by replicate r.
struct Range {
  std::size_t begin;
  std::size_t end;
};
Range replicate_range(std::size_t n_samples, std::size_t replicates, std::size_t r);
std::size_t effective_replicates(const SimWindow& w, std::size_t n_samples);

/// Runs body(r) for r in [0, reps); the parallel path uses OpenMP.
template <class Body>
void for_each_replicate(std::size_t reps, Exec exec, Body&& body) {
  const auto n = static_cast<std::int64_t>(reps);
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < n; ++r) body(static_cast<std::size_t>(r));
  } else {
    for (std::int64_t r = 0; r < n; ++r) body(static_cast<std::size_t>(r));
  }
}

inline double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

inline double gain(double r, double alpha) {
  if (alpha == 3.0) return 1.0 / (1.0 + r * r * r);
  if (alpha == 4.0) {
    const double r2 = r * r;
    return 1.0 / (1.0 + r2 * r2);
  }
  return 1.0 / (1.0 + std::pow(r, alpha));
}

/// Interferer weights P chi(t) g(r) seen from the origin, per network.
struct Geometry {
  std::vector<double> w1;  // primary interferers
  std::vector<double> w2;  // secondary interferers
  double far = 0.0;        // mean interference from beyond the disk
  double link_power = 0.0; // transmit power of the typical link
};

/// Appends weights power * chi(t) * g(r) for a TS-PPP of the given density on
/// the disk over epochs [-T_I, T_I].
void append_radial_weights(std::vector<double>& out, double density, double power, double radius,
                           double t_i, double alpha, std::mt19937_64& rng);

/// exp(-s (sigma2 + far)) prod 1/(1 + s w).
double conditional_coverage(const Geometry& g, double s, double sigma2);

/// One fading draw of the desired gain and the total interference.
struct FadeDraw {
  double h0;
  double interference;
};
FadeDraw draw_link(const Geometry& g, const CoverageSimOptions& opt, std::mt19937_64& rng);

/// Mean interference at the origin from nodes of `network` beyond radius R.
double far_interference(const LinkAnalysis& a, Link network, double radius);

/// Builds one geometry for the typical `link` receiver.
void build_uncoupled(const LinkAnalysis& a, Link link, const SimWindow& w, double far,
                     std::mt19937_64& rng, Geometry& out);
void build_coupled(const LinkAnalysis& a, Link link, const SimWindow& w, double far,
                   const CoverageSimOptions& opt, std::mt19937_64& rng, Geometry& out);

}  // namespace wpcn::mc::detail
