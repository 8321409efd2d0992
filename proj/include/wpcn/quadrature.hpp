#pragma once

// Adaptive Gauss-Kronrod quadrature for real- and complex-valued integrands.
//
// Global adaptive bisection on a 21-point Gauss-Kronrod rule (QUADPACK QAG
// style error scaling). Complex integrands share one subdivision tree; the
// error norm is the complex modulus.

#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "wpcn/errors.hpp"

namespace wpcn {

struct QuadratureSpec {
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  int max_subdivisions = 2000;

  /// Throws DomainError unless tolerances are positive and max_subdivisions >= 1.
  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
};

namespace detail {

struct Gk21 {
  double x[11];   // non-negative Kronrod abscissae, x[0] = 0
  double wk[11];  // Kronrod weights
  double wg[5];   // Gauss weights for x[1], x[3], ..., x[9]
};
const Gk21& gk21() noexcept;

inline double norm_of(double v) { return std::abs(v); }
inline double norm_of(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21_panel(F& f, double a, double b) {
  const Gk21& r = gk21();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * r.wk[0];
  T gauss{};
  double abs_k = norm_of(fc) * r.wk[0];
  T fv[21];
  fv[0] = fc;
  for (int j = 1; j <= 10; ++j) {
    const double dx = h * r.x[j];
    const T f1 = f(c - dx);
    const T f2 = f(c + dx);
    fv[2 * j - 1] = f1;
    fv[2 * j] = f2;
    kron += (f1 + f2) * r.wk[j];
    abs_k += (norm_of(f1) + norm_of(f2)) * r.wk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * r.wg[j / 2];
  }
  const T mean = kron * 0.5;
  double asc = norm_of(fc - mean) * r.wk[0];
  for (int j = 1; j <= 10; ++j)
    asc += (norm_of(fv[2 * j - 1] - mean) + norm_of(fv[2 * j] - mean)) * r.wk[j];

  const double habs = std::abs(h);
  double err = norm_of((kron - gauss) * h);
  const double resasc = asc * habs;
  const double resabs = abs_k * habs;
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return Panel<T>{a, b, kron * h, err};
}

template <class T>
[[noreturn]] void throw_nonconvergence(const std::string& what, const T& value, double err) {
  if constexpr (std::is_same_v<T, std::complex<double>>)
    throw NonConvergence(what, value.real(), err, value.imag());
  else
    throw NonConvergence(what, value, err);
}

}  // namespace detail

/// Integrates f over [a, b]. `f` maps double to double or std::complex<double>.
/// Stops when error <= max(abs_tol, rel_tol * |result|); throws
/// NonConvergence (with the best estimate) when the subdivision budget is spent.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {})
    -> QuadResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  if (!(a <= b)) throw DomainError("integrate_adaptive: require a <= b");
  if (a == b) return {T{}, 0.0};

  std::priority_queue<detail::Panel<T>> heap;
  heap.push(detail::gk21_panel<T>(f, a, b));
  T total = heap.top().value;
  double total_err = heap.top().error;
  int subdivisions = 0;

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * detail::norm_of(total)); };

  while (total_err > tolerance()) {
    if (subdivisions >= spec.max_subdivisions)
      detail::throw_nonconvergence("integrate_adaptive: subdivision budget exhausted", total, total_err);
    detail::Panel<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      detail::throw_nonconvergence("integrate_adaptive: interval too small to bisect", total, total_err);
    heap.pop();
    auto left = detail::gk21_panel<T>(f, worst.a, mid);
    auto right = detail::gk21_panel<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    if ((subdivisions & 63) == 0) {
      // periodic exact resummation to keep the running totals honest
      T s{};
      double e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        s += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      total = s;
      total_err = e;
    }
  }
  T s{};
  double e = 0.0;
  while (!heap.empty()) {
    s += heap.top().value;
    e += heap.top().error;
    heap.pop();
  }
  return {s, e};
}

/// Integrates f over consecutive panels split at the given sorted points.
template <class F>
auto integrate_split(F&& f, const std::vector<double>& points, const QuadratureSpec& spec = {})
    -> QuadResult<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  QuadResult<T> out{};
  if (points.size() < 2) return out;
  const double span = points.back() - points.front();
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double a = points[k];
    const double b = points[k + 1];
    if (!(b > a)) continue;
    QuadratureSpec local = spec;
    local.abs_tol = spec.abs_tol * (b - a) / span;
    auto r = integrate_adaptive(f, a, b, local);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

/// Integrates f over [a, inf) through u = a + v / (1 - v), v in [0, 1).
/// Requires an integrable tail, e.g. f(u) = O(u^(1 - alpha)) with alpha > 2.
template <class F>
auto integrate_semi_infinite(F&& f, double a, const QuadratureSpec& spec = {})
    -> QuadResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  auto mapped = [&f, a](double v) -> T {
    const double w = 1.0 - v;
    if (w <= 0.0) return T{};
    return f(a + v / w) * (1.0 / (w * w));
  };
  return integrate_adaptive(mapped, 0.0, 1.0, spec);
}

/// Integrates f over [0, inf) when f(u) = O(u^-decay), decay > 1. [0, 1] is
/// integrated directly; the tail through u = v^(-m), m = 1/(decay - 1), which
/// keeps the mapped integrand bounded as v -> 0 even for slow decay.
template <class F>
auto integrate_algebraic_tail(F&& f, double decay, const QuadratureSpec& spec = {})
    -> QuadResult<std::decay_t<decltype(f(1.0))>> {
  using T = std::decay_t<decltype(f(1.0))>;
  if (!(decay > 1.0)) throw DomainError("integrate_algebraic_tail: decay must exceed 1");
  const double m = 1.0 / (decay - 1.0);
  auto tail = [&f, m](double v) -> T {
    if (v <= 0.0) return T{};
    const double u = std::pow(v, -m);
    if (!std::isfinite(u)) return T{};
    return f(u) * (m * u / v);
  };
  auto head = integrate_adaptive(f, 0.0, 1.0, spec);
  auto rest = integrate_adaptive(tail, 0.0, 1.0, spec);
  return {head.value + rest.value, head.error + rest.error};
}

}  // namespace wpcn
