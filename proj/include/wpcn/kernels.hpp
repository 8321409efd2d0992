#pragma once

namespace wpcn {

/// Bounded path gain (1 + l^alpha)^-1. Throws DomainError for l < 0.
double path_gain(double l, double alpha);

/// Fraction of the typical slot [0, t_i] overlapped by a transmission that
/// starts at `t` and lasts `t_i`: the triangle (t_i - |t|) / t_i on [-t_i, t_i].
inline double chi(double t, double t_i) noexcept {
  const double a = t < 0 ? -t : t;
  return a >= t_i ? 0.0 : (t_i - a) / t_i;
}

/// Time that a transmission of length `t_i` starting at `t` overlaps the
/// harvesting window [0, t_e]. Continuous tent/trapezoid in t, zero outside
/// (-t_i, t_e), peak value min(t_e, t_i).
inline double psi(double t, double t_e, double t_i) noexcept {
  const double hi = (t + t_i < t_e) ? t + t_i : t_e;
  const double lo = t > 0 ? t : 0.0;
  return hi > lo ? hi - lo : 0.0;
}

/// Breakpoints of psi on [-t_i, t_e] in increasing order (four values; the
/// two interior points coincide when t_e == t_i).
struct PsiBreaks {
  double pts[4];
};
PsiBreaks psi_breakpoints(double t_e, double t_i) noexcept;

}  // namespace wpcn
