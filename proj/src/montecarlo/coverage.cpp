#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/kernels.hpp"

namespace wpcn::mc {

namespace detail {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Primary {
  double x, y, t, rx, ry;
};

// Uniform bucket grid over the square [-half, half]^2.
class BucketGrid {
 public:
  BucketGrid(double half, double cell) : half_(half), cell_(cell) {
    n_ = std::max(1, static_cast<int>(std::ceil(2.0 * half / cell)));
    cells_.assign(static_cast<std::size_t>(n_) * n_, {});
  }
  void insert(double x, double y, std::size_t id) { cells_[index(cell_of(x), cell_of(y))].push_back(id); }
  template <class F>
  void for_neighbours(double x, double y, F&& f) const {
    const int cx = cell_of(x), cy = cell_of(y);
    for (int i = std::max(0, cx - 1); i <= std::min(n_ - 1, cx + 1); ++i)
      for (int j = std::max(0, cy - 1); j <= std::min(n_ - 1, cy + 1); ++j)
        for (std::size_t id : cells_[index(i, j)]) f(id);
  }

 private:
  int cell_of(double v) const {
    return std::clamp(static_cast<int>(std::floor((v + half_) / cell_)), 0, n_ - 1);
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  double half_, cell_;
  int n_;
  std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace

double far_interference(const LinkAnalysis& a, Link network, double radius) {
  const double lambda = a.density(network);
  const double power = a.power(network);
  if (lambda <= 0.0 || power <= 0.0) return 0.0;
  const auto& p = a.params();
  return power * lambda * p.t_i() * kTwoPi * radial_tail(radius, p.alpha());
}

void build_coupled(const LinkAnalysis& a, Link link, const SimWindow& w, double far,
                   const CoverageSimOptions& opt, std::mt19937_64& rng, Geometry& out) {
  const SystemParams& p = a.params();
  const double radius = w.disk_radius;
  const double margin = std::max(opt.energy_radius, p.rho() + p.d());
  const double outer = radius + margin;
  const double t_lo = -2.0 * p.t_i() - p.t_e();
  const double t_hi = p.t_i();
  const double re2 = opt.energy_radius * opt.energy_radius;
  const double rho2 = p.rho() * p.rho();
  const double energy_far =
      p.lambda1() > 0.0
          ? p.p1() * p.lambda1() * p.t_e() * p.t_i() * kTwoPi * radial_tail(opt.energy_radius, p.alpha())
          : 0.0;

  std::vector<Primary> prims;
  std::vector<double> sec_x, sec_y, sec_t;
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kMaxAttempts) throw SecondaryUnpowered();
    out.w1.clear();
    out.w2.clear();
    out.far = far;
    prims.clear();

    if (link == Link::kPrimary) prims.push_back({p.d(), 0.0, 0.0, 0.0, 0.0});
    const std::uint64_t n1 = poisson(rng, p.lambda1() * std::numbers::pi * outer * outer * (t_hi - t_lo));
    BucketGrid grid(outer, margin);
    for (std::uint64_t i = 0; i < n1; ++i) {
      const double r = outer * std::sqrt(uniform01(rng));
      const double th = kTwoPi * uniform01(rng);
      const double t = t_lo + (t_hi - t_lo) * uniform01(rng);
      const double phi = kTwoPi * uniform01(rng);
      const double x = r * std::cos(th), y = r * std::sin(th);
      prims.push_back({x, y, t, x + p.d() * std::cos(phi), y + p.d() * std::sin(phi)});
      if (r <= radius && std::abs(t) < p.t_i())
        out.w1.push_back(p.p1() * chi(t, p.t_i()) * gain(r, p.alpha()));
    }
    for (std::size_t i = 0; i < prims.size(); ++i) grid.insert(prims[i].x, prims[i].y, i);

    // Energy and guard decision for a secondary at (x, y) starting transmission at tau.
    auto decide = [&](double x, double y, double tau, double& power) {
      const double awake = tau - p.t_e();
      double energy = energy_far;
      bool blocked = false;
      grid.for_neighbours(x, y, [&](std::size_t id) {
        const Primary& q = prims[id];
        const double dx = q.x - x, dy = q.y - y;
        const double r2 = dx * dx + dy * dy;
        if (r2 <= re2) {
          const double ps = psi(q.t - awake, p.t_e(), p.t_i());
          if (ps > 0.0) energy += p.p1() * -std::log1p(-uniform01(rng)) * gain(std::sqrt(r2), p.alpha()) * ps;
        }
        if (!blocked && q.t >= tau - p.t_i() && q.t <= tau) {
          const double ex = q.rx - x, ey = q.ry - y;
          if (ex * ex + ey * ey < rho2) blocked = true;
        }
      });
      const bool active = energy > p.epsilon() && !blocked;
      power = !active ? 0.0 : opt.realized_power ? std::min(energy, p.e_sat()) / p.t_i() : a.p2();
      return active;
    };

    if (link == Link::kSecondary) {
      double own = 0.0;
      if (!decide(p.d(), 0.0, 0.0, own)) continue;
      out.link_power = own;
    } else {
      out.link_power = p.p1();
    }

    const std::uint64_t n2 = poisson(rng, p.lambda2() * std::numbers::pi * radius * radius * 2.0 * p.t_i());
    for (std::uint64_t i = 0; i < n2; ++i) {
      const double r = radius * std::sqrt(uniform01(rng));
      const double th = kTwoPi * uniform01(rng);
      const double tau = p.t_i() * (2.0 * uniform01(rng) - 1.0);
      double power = 0.0;
      if (decide(r * std::cos(th), r * std::sin(th), tau, power))
        out.w2.push_back(power * chi(tau, p.t_i()) * gain(r, p.alpha()));
    }
    return;
  }
}

}  // namespace detail

namespace {

using detail::Geometry;

struct GeometrySource {
  const LinkAnalysis& analysis;
  Link link;
  const SimWindow& window;
  const CoverageSimOptions& options;
  double far;

  void build(std::mt19937_64& rng, Geometry& g) const {
    if (options.coupled)
      detail::build_coupled(analysis, link, window, far, options, rng, g);
    else
      detail::build_uncoupled(analysis, link, window, far, rng, g);
  }
};

double total_far(const LinkAnalysis& a, double radius) {
  return detail::far_interference(a, Link::kPrimary, radius) + detail::far_interference(a, Link::kSecondary, radius);
}

// s for the geometry's own link power.
double geometry_scale(const LinkAnalysis& a, double zeta, const Geometry& g) {
  const auto& p = a.params();
  return zeta * (1.0 + std::pow(p.d(), p.alpha())) / g.link_power;
}

}  // namespace

std::vector<Estimate> simulate_coverage_curve(const LinkAnalysis& analysis, std::span<const double> zetas,
                                              Link link, const SimWindow& window, std::size_t n_samples,
                                              const CoverageSimOptions& options, Exec exec) {
  window.validate();
  options.fading.validate();
  for (double z : zetas) {
    if (!(z > 0.0)) throw DomainError("simulate_coverage: zeta must be positive");
    analysis.scale(z, link);
  }
  const std::size_t reps = detail::effective_replicates(window, n_samples);
  const std::size_t nz = zetas.size();
  std::vector<std::vector<detail::Moments>> parts(reps, std::vector<detail::Moments>(nz));
  const GeometrySource src{analysis, link, window, options, total_far(analysis, window.disk_radius)};
  const bool product_form = options.fading.kind == FadingKind::kRayleigh;
  const double sigma2 = analysis.params().sigma2();
  detail::for_each_replicate(reps, exec, [&](std::size_t r) {
    auto rng = make_stream(window.master_seed, detail::kSaltCoverage, r);
    const auto range = detail::replicate_range(n_samples, reps, r);
    Geometry g;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      src.build(rng, g);
      if (product_form) {
        for (std::size_t k = 0; k < nz; ++k)
          parts[r][k].add(detail::conditional_coverage(g, geometry_scale(analysis, zetas[k], g), sigma2));
      } else {
        const auto draw = detail::draw_link(g, options, rng);
        for (std::size_t k = 0; k < nz; ++k) {
          const double s = geometry_scale(analysis, zetas[k], g);
          parts[r][k].add(draw.h0 >= s * (draw.interference + sigma2) ? 1.0 : 0.0);
        }
      }
    }
  });
  std::vector<Estimate> out(nz);
  for (std::size_t k = 0; k < nz; ++k) {
    detail::Moments total;
    for (std::size_t r = 0; r < reps; ++r) total.merge(parts[r][k]);
    out[k] = total.estimate();
  }
  return out;
}

Estimate simulate_coverage(const LinkAnalysis& analysis, double zeta, Link link, const SimWindow& window,
                           std::size_t n_samples, const CoverageSimOptions& options, Exec exec) {
  const double z[1] = {zeta};
  return simulate_coverage_curve(analysis, z, link, window, n_samples, options, exec).front();
}

namespace {

// Runs `per_geometry(weights, far, rng)` over single-network geometries.
template <class F>
Estimate single_network(const LinkAnalysis& a, Link network, const SimWindow& window, std::size_t n,
                        detail::Salt salt, Exec exec, F&& per_geometry) {
  window.validate();
  const auto& p = a.params();
  const double far = detail::far_interference(a, network, window.disk_radius);
  const std::size_t reps = detail::effective_replicates(window, n);
  std::vector<detail::Moments> parts(reps);
  detail::for_each_replicate(reps, exec, [&](std::size_t r) {
    auto rng = make_stream(window.master_seed, salt, r);
    const auto range = detail::replicate_range(n, reps, r);
    std::vector<double> w;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      w.clear();
      detail::append_radial_weights(w, a.density(network), a.power(network), window.disk_radius, p.t_i(),
                                    p.alpha(), rng);
      parts[r].add(per_geometry(w, far, rng));
    }
  });
  detail::Moments total;
  for (const auto& m : parts) total.merge(m);
  return total.estimate();
}

}  // namespace

Estimate simulate_laplace(const LinkAnalysis& analysis, double s, Link network, const SimWindow& window,
                          std::size_t n_samples, Exec exec) {
  if (!(s >= 0.0)) throw DomainError("simulate_laplace: s must be non-negative");
  return single_network(analysis, network, window, n_samples, detail::kSaltLaplace, exec,
                        [s](const std::vector<double>& w, double far, std::mt19937_64& rng) {
                          double i_total = far;
                          for (double x : w) i_total += x * -std::log1p(-detail::uniform01(rng));
                          return std::exp(-s * i_total);
                        });
}

Estimate simulate_second_moment(const LinkAnalysis& analysis, double s, Link network,
                                const SimWindow& window, std::size_t n_samples, Exec exec) {
  if (!(s >= 0.0)) throw DomainError("simulate_second_moment: s must be non-negative");
  return single_network(analysis, network, window, n_samples, detail::kSaltSecondMoment, exec,
                        [s](const std::vector<double>& w, double far, std::mt19937_64&) {
                          double q = std::exp(-s * far);
                          for (double x : w) q /= 1.0 + s * x;
                          return q * q;
                        });
}

double MetaSample::ccdf(double x) const {
  if (q.empty()) return 0.0;
  const auto it = std::upper_bound(q.begin(), q.end(), x);
  return static_cast<double>(q.end() - it) / static_cast<double>(q.size());
}

double MetaSample::moment(int k) const {
  if (q.empty()) return 0.0;
  double acc = 0.0;
  for (double v : q) acc += std::pow(v, k);
  return acc / static_cast<double>(q.size());
}

MetaSample simulate_meta(const LinkAnalysis& analysis, double zeta, Link link, const SimWindow& window,
                         std::size_t n_geometry, std::size_t n_fading, const CoverageSimOptions& options,
                         Exec exec) {
  window.validate();
  options.fading.validate();
  if (!(zeta > 0.0)) throw DomainError("simulate_meta: zeta must be positive");
  if (n_fading < 1) throw DomainError("simulate_meta: n_fading must be >= 1");
  analysis.scale(zeta, link);
  MetaSample out;
  out.q.assign(n_geometry, 0.0);
  const std::size_t reps = detail::effective_replicates(window, n_geometry);
  const GeometrySource src{analysis, link, window, options, total_far(analysis, window.disk_radius)};
  const bool product_form = options.fading.kind == FadingKind::kRayleigh;
  const double sigma2 = analysis.params().sigma2();
  detail::for_each_replicate(reps, exec, [&](std::size_t r) {
    auto rng = make_stream(window.master_seed, detail::kSaltMeta, r);
    const auto range = detail::replicate_range(n_geometry, reps, r);
    Geometry g;
    for (std::size_t i = range.begin; i < range.end; ++i) {
      src.build(rng, g);
      const double s = geometry_scale(analysis, zeta, g);
      if (product_form) {
        out.q[i] = detail::conditional_coverage(g, s, sigma2);
      } else {
        std::size_t hits = 0;
        for (std::size_t k = 0; k < n_fading; ++k) {
          const auto draw = detail::draw_link(g, options, rng);
          if (draw.h0 >= s * (draw.interference + sigma2)) ++hits;
        }
        out.q[i] = static_cast<double>(hits) / static_cast<double>(n_fading);
      }
    }
  });
  std::sort(out.q.begin(), out.q.end());
  return out;
}

}  // namespace wpcn::mc
