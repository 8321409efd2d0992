#pragma once

#include <complex>
#include <functional>

#include "wpcn/quadrature.hpp"

namespace wpcn {

using CharacteristicFn = std::function<std::complex<double>(double)>;

/// Diagnostics from a Gil-Pelaez inversion.
struct InversionResult {
  double probability = 0.0;  ///< clamped to [0, 1]
  double raw = 0.0;          ///< 1/2 + I/pi before clamping
  double error = 0.0;        ///< error estimate on `raw`
  int blocks = 0;            ///< number of oscillation blocks integrated
  bool accelerated = false;  ///< true when the epsilon-extrapolated sum was used
};

/// P(X > threshold) = 1/2 + (1/pi) * int_0^inf Im[exp(-i z threshold) F(z)] / z dz.
///
/// The integral is summed over blocks of length pi / max(|threshold|, |mean|)
/// (mean estimated from F by a one-sided difference). Summation stops when
/// three consecutive blocks fall below abs_tol / 10, or when the Wynn
/// epsilon-extrapolated partial sums settle to abs_tol.
InversionResult gil_pelaez_invert(const CharacteristicFn& charfn, double threshold,
                                  const QuadratureSpec& spec = {});

inline double gil_pelaez_ccdf(const CharacteristicFn& charfn, double threshold,
                              const QuadratureSpec& spec = {}) {
  return gil_pelaez_invert(charfn, threshold, spec).probability;
}

/// Regularized incomplete Beta function I_x(gamma, delta).
double regularized_incomplete_beta(double x, double gamma, double delta);

/// Wynn epsilon extrapolation of a sequence of partial sums.
/// Returns the highest-order even-column estimate.
double wynn_epsilon(const double* partial_sums, int n);

}  // namespace wpcn
