#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "wpcn/numerics.hpp"

namespace wpcn {
namespace {

constexpr double kTinyZ = 1e-9;
constexpr int kMinBlocks = 8;
constexpr int kMaxBlocks = 200000;
constexpr int kWynnWindow = 40;

// Mean of X from F'(0) = i E[X], refined until the step is small against
// the mean's own scale.
double estimate_mean(const CharacteristicFn& f) {
  double h = 1e-6;
  double m = 0.0;
  for (int it = 0; it < 4; ++it) {
    m = f(h).imag() / h;
    if (!std::isfinite(m)) return 0.0;
    const double target = 1e-5 / std::max(std::abs(m), 1e-300);
    if (h <= target * 1.0001) break;
    h = target;
  }
  return m;
}

}  // namespace

double wynn_epsilon(const double* s, int n) {
  if (n <= 0) return 0.0;
  if (n == 1) return s[0];
  const double huge = std::numeric_limits<double>::max() / 4;
  std::vector<double> e(s, s + n);
  // e holds successive columns; after processing column k, e[j] = eps_k^(j)
  // for j < n - k. Keep the last even column.
  std::vector<double> prev(n, 0.0);  // column k-1 (eps_{-1} = 0)
  double best = s[n - 1];
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (int j = 0; j < n - k; ++j) {
      const double diff = e[j + 1] - e[j];
      const double p = (k == 1) ? 0.0 : prev[j + 1];
      next[j] = std::abs(diff) < 1e-300 ? huge : p + 1.0 / diff;
    }
    prev = e;
    e = next;
    if (k % 2 == 0) {
      const double v = e[n - k - 1];
      if (std::isfinite(v) && std::abs(v) < huge / 2) best = v;
    }
  }
  return best;
}

InversionResult gil_pelaez_invert(const CharacteristicFn& charfn, double threshold,
                                  const QuadratureSpec& spec) {
  spec.validate();
  const double mean = estimate_mean(charfn);
  double scale = std::max(std::abs(threshold), std::abs(mean));
  if (!(scale > 0.0)) scale = 1.0;
  const double block = std::numbers::pi / scale;

  auto integrand = [&](double z) {
    const double zz = std::max(z, kTinyZ);
    const std::complex<double> rot(std::cos(zz * threshold), -std::sin(zz * threshold));
    return (rot * charfn(zz)).imag() / zz;
  };

  QuadratureSpec local = spec;
  local.abs_tol = spec.abs_tol / 10.0;

  std::vector<double> sums;
  sums.reserve(1024);
  double sum = 0.0;
  double err = 0.0;
  int small_run = 0;
  double acc_prev2 = std::numeric_limits<double>::quiet_NaN();
  double acc_prev1 = std::numeric_limits<double>::quiet_NaN();

  auto finish = [&](double integral, double e, int blocks, bool accelerated) {
    InversionResult r;
    r.raw = 0.5 + integral / std::numbers::pi;
    r.probability = std::clamp(r.raw, 0.0, 1.0);
    r.error = e / std::numbers::pi;
    r.blocks = blocks;
    r.accelerated = accelerated;
    return r;
  };

  for (int k = 0; k < kMaxBlocks; ++k) {
    const double a = k * block;
    const auto piece = integrate_adaptive(integrand, a, a + block, local);
    sum += piece.value;
    err += piece.error;
    sums.push_back(sum);

    small_run = std::abs(piece.value) < spec.abs_tol / 10.0 ? small_run + 1 : 0;
    if (small_run >= 3 && k + 1 >= 3) return finish(sum, err, k + 1, false);

    const int n = static_cast<int>(sums.size());
    const int w = std::min(n, kWynnWindow);
    const double acc = wynn_epsilon(sums.data() + (n - w), w);
    if (n >= kMinBlocks && std::abs(acc - acc_prev1) < spec.abs_tol &&
        std::abs(acc_prev1 - acc_prev2) < spec.abs_tol) {
      return finish(acc, err + std::abs(acc - acc_prev1), n, true);
    }
    acc_prev2 = acc_prev1;
    acc_prev1 = acc;
  }
  const double best = std::isfinite(acc_prev1) ? acc_prev1 : sum;
  const double e = std::abs(acc_prev1 - acc_prev2);
  throw NonConvergence("gil_pelaez_invert: tail did not decay within the block budget",
                       0.5 + best / std::numbers::pi, e / std::numbers::pi);
}

}  // namespace wpcn
