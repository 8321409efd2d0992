#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "wpcn/kernels.hpp"

namespace wpcn::mc {

namespace {

using detail::poisson;
using detail::uniform01;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Harvested energy at the origin over [t0, t0 + T_E] from primaries with
// epochs spanning the kernel support; points beyond `radius` are replaced by
// `far_mean`. Also reports whether an active primary receiver lies within
// rho at t0 + T_E when `guard` is set.
struct HarvestDraw {
  double energy = 0.0;
  bool guard_empty = true;
};

HarvestDraw harvest_once(const SystemParams& p, double radius, double far_mean, bool guard,
                         std::mt19937_64& rng) {
  HarvestDraw out;
  out.energy = far_mean;
  const double t_lo = -p.t_i();
  const double t_hi = p.t_e();
  const double span = t_hi - t_lo;
  const double disk = guard ? std::max(radius, p.rho() + p.d()) : radius;
  const std::uint64_t n = poisson(rng, p.lambda1() * std::numbers::pi * disk * disk * span);
  const double rho2 = p.rho() * p.rho();
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = disk * std::sqrt(uniform01(rng));
    const double th = kTwoPi * uniform01(rng);
    const double t = t_lo + span * uniform01(rng);
    const double h = -std::log1p(-uniform01(rng));
    if (r <= radius) out.energy += p.p1() * h * detail::gain(r, p.alpha()) * psi(t, p.t_e(), p.t_i());
    if (guard && out.guard_empty && t >= p.t_e() - p.t_i() && t <= p.t_e()) {
      const double phi = kTwoPi * uniform01(rng);
      const double rx = r * std::cos(th) + p.d() * std::cos(phi);
      const double ry = r * std::sin(th) + p.d() * std::sin(phi);
      if (rx * rx + ry * ry < rho2) out.guard_empty = false;
    }
  }
  return out;
}

double energy_far_mean(const SystemParams& p, double radius) {
  if (p.lambda1() == 0.0) return 0.0;
  return p.p1() * p.lambda1() * p.t_e() * p.t_i() * kTwoPi * radial_tail(radius, p.alpha());
}

}  // namespace

std::vector<double> simulate_energy(const SystemParams& params, const SimWindow& window,
                                    std::size_t n_samples, Exec exec) {
  window.validate();
  std::vector<double> out(n_samples, 0.0);
  if (n_samples == 0) return out;
  const double far = energy_far_mean(params, window.disk_radius);
  const std::size_t reps = detail::effective_replicates(window, n_samples);
  detail::for_each_replicate(reps, exec, [&](std::size_t r) {
    auto rng = make_stream(window.master_seed, detail::kSaltEnergy, r);
    const auto range = detail::replicate_range(n_samples, reps, r);
    for (std::size_t i = range.begin; i < range.end; ++i)
      out[i] = harvest_once(params, window.disk_radius, far, false, rng).energy;
  });
  return out;
}

Estimate simulate_guard_void(const SystemParams& params, const SimWindow& window, std::size_t n_samples,
                             Exec exec) {
  window.validate();
  const std::size_t reps = detail::effective_replicates(window, n_samples);
  std::vector<detail::Moments> parts(reps);
  const double disk = params.rho() + params.d();
  const double rho2 = params.rho() * params.rho();
  // Only primaries transmitting at the decision instant 0 matter: epochs in [-T_I, 0].
  const double mean = params.lambda1() * std::numbers::pi * disk * disk * params.t_i();
  detail::for_each_replicate(reps, exec, [&](std::size_t r) {
    auto rng = make_stream(window.master_seed, detail::kSaltGuard, r);
    const auto range = detail::replicate_range(n_samples, reps, r);
    for (std::size_t i = range.begin; i < range.end; ++i) {
      const std::uint64_t n = poisson(rng, mean);
      bool empty = true;
      for (std::uint64_t k = 0; k < n; ++k) {
        const double rr = disk * std::sqrt(uniform01(rng));
        const double th = kTwoPi * uniform01(rng);
        const double phi = kTwoPi * uniform01(rng);
        const double x = rr * std::cos(th) + params.d() * std::cos(phi);
        const double y = rr * std::sin(th) + params.d() * std::sin(phi);
        if (x * x + y * y < rho2) empty = false;
      }
      parts[r].add(empty ? 1.0 : 0.0);
    }
  });
  detail::Moments total;
  for (const auto& m : parts) total.merge(m);
  return total.estimate();
}

AccessEstimate simulate_access(const SystemParams& params, const SimWindow& window, std::size_t n_samples,
                               Exec exec) {
  window.validate();
  const std::size_t reps = detail::effective_replicates(window, n_samples);
  struct Part {
    detail::Moments eps, guard, both, energy, mid, top;
  };
  std::vector<Part> parts(reps);
  const double far = energy_far_mean(params, window.disk_radius);
  detail::for_each_replicate(reps, exec, [&](std::size_t r) {
    auto rng = make_stream(window.master_seed, detail::kSaltAccess, r);
    const auto range = detail::replicate_range(n_samples, reps, r);
    for (std::size_t i = range.begin; i < range.end; ++i) {
      const HarvestDraw h = harvest_once(params, window.disk_radius, far, true, rng);
      const bool powered = h.energy > params.epsilon();
      parts[r].eps.add(powered ? 1.0 : 0.0);
      parts[r].guard.add(h.guard_empty ? 1.0 : 0.0);
      parts[r].both.add(powered && h.guard_empty ? 1.0 : 0.0);
      parts[r].energy.add(h.energy);
      parts[r].mid.add(powered && h.energy < params.e_sat() ? 1.0 : 0.0);
      parts[r].top.add(h.energy >= params.e_sat() ? 1.0 : 0.0);
    }
  });
  Part total;
  for (const auto& p : parts) {
    total.eps.merge(p.eps);
    total.guard.merge(p.guard);
    total.both.merge(p.both);
    total.energy.merge(p.energy);
    total.mid.merge(p.mid);
    total.top.merge(p.top);
  }
  // Three-level rule: the middle tier transmits with the sample mean energy.
  const Estimate mean = total.energy.estimate();
  const double f_mid = total.mid.estimate().value;
  const double f_top = total.top.estimate().value;
  const double lo = mean.value / params.t_i();
  const double hi = params.e_sat() / params.t_i();
  Estimate power;
  power.n = total.energy.n;
  power.value = lo * f_mid + hi * f_top;
  if (power.n > 1) {
    const double second = lo * lo * f_mid + hi * hi * f_top;
    const double var = std::max(0.0, second - power.value * power.value);
    const double se_mean = mean.std_error / params.t_i() * f_mid;
    power.std_error = std::sqrt(var / static_cast<double>(power.n) + se_mean * se_mean);
  }
  return {total.eps.estimate(), total.guard.estimate(), total.both.estimate(), power};
}

}  // namespace wpcn::mc
