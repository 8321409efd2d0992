#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/quadrature.hpp"

namespace wpcn::mc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void SimWindow::validate() const {
  if (!(disk_radius > 0.0)) throw DomainError("SimWindow: disk_radius must be positive");
  if (!(t_min < t_max)) throw DomainError("SimWindow: t_min must be below t_max");
  if (replicates < 1) throw DomainError("SimWindow: replicates must be >= 1");
}

void FadingSpec::validate() const {
  if (!(k_factor >= 0.0)) throw DomainError("FadingSpec: k_factor must be non-negative");
}

std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t salt, std::uint64_t index) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(master_seed) ^ salt) ^ index);
  return std::mt19937_64(key);
}

double draw_fade(std::mt19937_64& rng, const FadingSpec& fading) {
  if (fading.kind == FadingKind::kRayleigh) return -std::log1p(-detail::uniform01(rng));
  const double k = fading.k_factor;
  const double los = std::sqrt(k / (k + 1.0));
  const double sigma = std::sqrt(0.5 / (k + 1.0));
  std::normal_distribution<double> n01(0.0, 1.0);
  const double re = los + sigma * n01(rng);
  const double im = sigma * n01(rng);
  return re * re + im * im;
}

std::vector<TsPoint> sample_tsppp(double density, const SimWindow& window, std::mt19937_64& rng,
                                  const FadingSpec& fading) {
  if (!(density >= 0.0)) throw DomainError("sample_tsppp: density must be non-negative");
  const double r_max = window.disk_radius;
  const double span = window.t_max - window.t_min;
  const double mean = density * std::numbers::pi * r_max * r_max * span;
  const std::uint64_t n = detail::poisson(rng, mean);
  std::vector<TsPoint> pts;
  pts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = r_max * std::sqrt(detail::uniform01(rng));
    const double th = 2.0 * std::numbers::pi * detail::uniform01(rng);
    TsPoint p;
    p.x = r * std::cos(th);
    p.y = r * std::sin(th);
    p.epoch = window.t_min + span * detail::uniform01(rng);
    p.fade = draw_fade(rng, fading);
    pts.push_back(p);
  }
  return pts;
}

double radial_tail(double radius, double alpha) {
  auto f = [alpha](double r) { return r / (1.0 + std::pow(r, alpha)); };
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-10;
  return integrate_semi_infinite(f, radius, spec).value;
}

Estimate sample_mean(std::span<const double> xs) {
  detail::Moments m;
  for (double x : xs) m.add(x);
  return m.estimate();
}

Estimate empirical_ccdf(std::span<const double> xs, double threshold) {
  detail::Moments m;
  for (double x : xs) m.add(x > threshold ? 1.0 : 0.0);
  return m.estimate();
}

std::complex<double> empirical_char_fn(std::span<const double> xs, double z) {
  double re = 0.0, im = 0.0;
  for (double x : xs) {
    re += std::cos(z * x);
    im += std::sin(z * x);
  }
  const double n = static_cast<double>(xs.size());
  return {re / n, im / n};
}

namespace detail {

Estimate Moments::estimate() const {
  Estimate e;
  e.n = n;
  if (n == 0) return e;
  const double dn = static_cast<double>(n);
  e.value = sum / dn;
  if (n > 1) {
    const double var = std::max(0.0, (sumsq - dn * e.value * e.value) / (dn - 1.0));
    e.std_error = std::sqrt(var / dn);
  }
  return e;
}

Range replicate_range(std::size_t n, std::size_t reps, std::size_t r) {
  return {n * r / reps, n * (r + 1) / reps};
}

std::size_t effective_replicates(const SimWindow& w, std::size_t n) {
  return std::max<std::size_t>(1, std::min(w.replicates, n));
}

void append_radial_weights(std::vector<double>& out, double density, double power, double radius,
                           double t_i, double alpha, std::mt19937_64& rng) {
  if (density <= 0.0 || power <= 0.0) return;
  const double mean = density * std::numbers::pi * radius * radius * 2.0 * t_i;
  const std::uint64_t n = poisson(rng, mean);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(uniform01(rng));
    const double t = t_i * (2.0 * uniform01(rng) - 1.0);
    const double c = 1.0 - std::abs(t) / t_i;
    out.push_back(power * c * gain(r, alpha));
  }
}

double conditional_coverage(const Geometry& g, double s, double sigma2) {
  double q = std::exp(-s * (sigma2 + g.far));
  for (double w : g.w1) q /= 1.0 + s * w;
  for (double w : g.w2) q /= 1.0 + s * w;
  return q;
}

FadeDraw draw_link(const Geometry& g, const CoverageSimOptions& opt, std::mt19937_64& rng) {
  const FadingSpec interferer = opt.rician_interferers ? opt.fading : FadingSpec::rayleigh();
  double interference = g.far;
  for (double w : g.w1) interference += w * draw_fade(rng, interferer);
  for (double w : g.w2) interference += w * draw_fade(rng, interferer);
  return {draw_fade(rng, opt.fading), interference};
}

void build_uncoupled(const LinkAnalysis& a, Link link, const SimWindow& w, double far,
                     std::mt19937_64& rng, Geometry& out) {
  const SystemParams& p = a.params();
  out.w1.clear();
  out.w2.clear();
  append_radial_weights(out.w1, p.lambda1(), p.p1(), w.disk_radius, p.t_i(), p.alpha(), rng);
  append_radial_weights(out.w2, a.lambda2_active(), a.p2(), w.disk_radius, p.t_i(), p.alpha(), rng);
  out.far = far;
  out.link_power = a.power(link);
}

}  // namespace detail
}  // namespace wpcn::mc
