#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "wpcn/errors.hpp"
#include "wpcn/meta.hpp"
#include "wpcn/montecarlo.hpp"

using namespace wpcn;
using doctest::Approx;

namespace {

bool same_bits(const mc::Estimate& a, const mc::Estimate& b) {
  return a.value == b.value && a.std_error == b.std_error && a.n == b.n;
}

double two_sample_z(const mc::Estimate& a, const mc::Estimate& b) {
  return std::abs(a.value - b.value) / std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

}  // namespace

TEST_CASE("window and fading validation") {
  mc::SimWindow w;
  w.disk_radius = 0.0;
  CHECK_THROWS_AS(w.validate(), DomainError);
  w = {};
  w.t_min = w.t_max;
  CHECK_THROWS_AS(w.validate(), DomainError);
  w = {};
  w.replicates = 0;
  CHECK_THROWS_AS(w.validate(), DomainError);
  CHECK_THROWS_AS(mc::FadingSpec::rician(-1.0).validate(), DomainError);
}

TEST_CASE("tsppp sampler") {
  mc::SimWindow w;
  w.disk_radius = 20.0;
  auto rng = mc::make_stream(1, 2, 3);
  CHECK(mc::sample_tsppp(0.0, w, rng).empty());
  CHECK_THROWS_AS(mc::sample_tsppp(-1.0, w, rng), DomainError);

  const double mean = 0.1 * std::numbers::pi * 400.0;
  const int n = 4000;
  std::vector<int> counts(n);
  double r2 = 0.0, ep = 0.0, fade = 0.0;
  std::size_t pts = 0;
  for (int k = 0; k < n; ++k) {
    const auto p = mc::sample_tsppp(0.1, w, rng);
    counts[k] = static_cast<int>(p.size());
    for (const auto& q : p) {
      REQUIRE(q.fade >= 0.0);
      REQUIRE(q.x * q.x + q.y * q.y <= 400.0);
      REQUIRE(q.epoch >= w.t_min);
      REQUIRE(q.epoch <= w.t_max);
      r2 += q.x * q.x + q.y * q.y;
      ep += q.epoch;
      fade += q.fade;
      ++pts;
    }
  }
  // Chi-square against Poisson(mean): bins (<=100], (100,105], ..., (145,150], (>150).
  auto pmf = [mean](int k) { return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0)); };
  std::vector<double> expected(12, 0.0), observed(12, 0.0);
  auto bin = [](int k) { return k <= 100 ? 0 : k > 150 ? 11 : (k - 101) / 5 + 1; };
  for (int k = 0; k < 400; ++k) expected[bin(k)] += n * pmf(k);
  for (int c : counts) observed[bin(c)] += 1.0;
  double chi2 = 0.0;
  for (int b = 0; b < 12; ++b) chi2 += (observed[b] - expected[b]) * (observed[b] - expected[b]) / expected[b];
  CHECK(chi2 < 31.26);  // 0.999 quantile, 11 degrees of freedom
  CHECK(r2 / pts == Approx(200.0).epsilon(0.01));  // E[r^2] = R^2 / 2
  CHECK(std::abs(ep / pts) < 0.01);
  CHECK(fade / pts == Approx(1.0).epsilon(0.01));

  auto a = mc::make_stream(9, 9, 9), b = mc::make_stream(9, 9, 9);
  const auto pa = mc::sample_tsppp(0.1, w, a), pb = mc::sample_tsppp(0.1, w, b);
  REQUIRE(pa.size() == pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    CHECK(pa[i].x == pb[i].x);
    CHECK(pa[i].epoch == pb[i].epoch);
    CHECK(pa[i].fade == pb[i].fade);
  }
}

TEST_CASE("fade draws have unit mean") {
  auto rng = mc::make_stream(4, 4, 4);
  for (double k : {0.0, 1.0, 10.0}) {
    double s = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) s += mc::draw_fade(rng, mc::FadingSpec::rician(k));
    CHECK(s / n == Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("radial tail") {
  // int_R^inf r/(1+r^3) dr ~ 1/R - 1/(4 R^4) for large R.
  CHECK(mc::radial_tail(50.0, 3.0) == Approx(1.0 / 50.0 - 1.0 / (4.0 * std::pow(50.0, 4))).epsilon(1e-9));
  CHECK(mc::radial_tail(0.0, 3.0) == Approx(2.0 * std::numbers::pi / (3.0 * std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("energy samples") {
  ParamValues v;
  v.lambda1 = 0.0;
  const auto zeros = mc::simulate_energy(SystemParams(v), mc::SimWindow{}, 1000);
  for (double x : zeros) CHECK(x == 0.0);
  const auto xs = mc::simulate_energy(SystemParams{}, mc::SimWindow{}, 2000);
  for (double x : xs) CHECK(x >= 0.0);
  CHECK(mc::empirical_ccdf(xs, 1e9).value == 0.0);
}

TEST_CASE("serial and parallel execution are bit-identical") {
  const SystemParams p;
  mc::SimWindow w;
  w.replicates = 7;
  const auto a = mc::simulate_energy(p, w, 5000, mc::Exec::kSerial);
  const auto b = mc::simulate_energy(p, w, 5000, mc::Exec::kParallel);
  CHECK(a == b);
  CHECK(same_bits(mc::simulate_guard_void(p, w, 5000, mc::Exec::kSerial),
                  mc::simulate_guard_void(p, w, 5000, mc::Exec::kParallel)));
  const auto an = LinkAnalysis::build(p);
  CHECK(same_bits(mc::simulate_coverage(an, 0.1, Link::kSecondary, w, 3000, {}, mc::Exec::kSerial),
                  mc::simulate_coverage(an, 0.1, Link::kSecondary, w, 3000, {}, mc::Exec::kParallel)));
  mc::CoverageSimOptions coupled;
  coupled.coupled = true;
  CHECK(same_bits(mc::simulate_coverage(an, 0.1, Link::kPrimary, w, 300, coupled, mc::Exec::kSerial),
                  mc::simulate_coverage(an, 0.1, Link::kPrimary, w, 300, coupled, mc::Exec::kParallel)));
  const auto ma = mc::simulate_meta(an, 0.3, Link::kPrimary, w, 2000, 1, {}, mc::Exec::kSerial);
  const auto mb = mc::simulate_meta(an, 0.3, Link::kPrimary, w, 2000, 1, {}, mc::Exec::kParallel);
  CHECK(ma.q == mb.q);
  // Same seed, repeated call.
  CHECK(mc::simulate_energy(p, w, 5000) == b);
  w.master_seed += 1;
  CHECK(mc::simulate_energy(p, w, 5000) != b);
}

TEST_CASE("coverage simulator limits") {
  const auto a = LinkAnalysis::build(SystemParams{});
  mc::SimWindow w;
  CHECK(mc::simulate_coverage(a, 1e-12, Link::kPrimary, w, 2000).value == Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(mc::simulate_coverage(a, 0.0, Link::kPrimary, w, 10), DomainError);

  ParamValues v;
  v.lambda1 = 0.0;
  v.lambda2 = 0.0;
  v.sigma2 = 0.05;
  LinkAnalysis quiet(SystemParams(v), 0.3, 0.0);
  const double z = 2.0;
  const double exact = std::exp(-z * 0.05 * 2.0 / 1.0);
  const auto est = mc::simulate_coverage(quiet, z, Link::kPrimary, w, 1000);
  CHECK(est.value == Approx(exact).epsilon(1e-14));
  mc::CoverageSimOptions sampled;
  sampled.fading = mc::FadingSpec::rician(0.0);
  const auto s2 = mc::simulate_coverage(quiet, z, Link::kPrimary, w, 200000, sampled);
  CHECK(std::abs(s2.value - exact) < 4.0 * s2.std_error);

  const auto meta = mc::simulate_meta(quiet, z, Link::kPrimary, w, 1000);
  CHECK(meta.q.front() == Approx(exact).epsilon(1e-14));
  CHECK(meta.q.back() == Approx(exact).epsilon(1e-14));
  CHECK(meta.ccdf(0.0) == 1.0);

  LinkAnalysis unpowered(SystemParams{}, 0.0, 0.0);
  CHECK_THROWS_AS(mc::simulate_coverage(unpowered, 0.1, Link::kSecondary, w, 10), SecondaryUnpowered);
}

TEST_CASE("estimates insensitive to doubling the disk") {
  const auto a = LinkAnalysis::build(SystemParams{});
  mc::SimWindow small, large;
  large.disk_radius = 2.0 * small.disk_radius;
  large.master_seed = small.master_seed + 1;
  for (Link l : {Link::kPrimary, Link::kSecondary}) {
    const auto x = mc::simulate_coverage(a, 0.3, l, small, 20000);
    const auto y = mc::simulate_coverage(a, 0.3, l, large, 20000);
    CHECK(two_sample_z(x, y) < 2.0);
  }
  const auto ea = mc::sample_mean(mc::simulate_energy(SystemParams{}, small, 100000));
  const auto eb = mc::sample_mean(mc::simulate_energy(SystemParams{}, large, 25000));
  CHECK(two_sample_z(ea, eb) < 2.0);
}

TEST_CASE("rayleigh and rician K=0 coverage agree") {
  const auto a = LinkAnalysis::build(SystemParams{});
  mc::SimWindow w;
  mc::CoverageSimOptions rayleigh_sampled;
  rayleigh_sampled.fading = mc::FadingSpec::rician(0.0);
  rayleigh_sampled.rician_interferers = true;
  for (Link l : {Link::kPrimary, Link::kSecondary}) {
    const auto x = mc::simulate_coverage(a, 0.3, l, w, 40000);
    const auto y = mc::simulate_coverage(a, 0.3, l, w, 40000, rayleigh_sampled);
    CHECK(two_sample_z(x, y) < 3.0);
  }
}

TEST_CASE("rician pair links: high K wins at low thresholds, loses at high") {
  const auto a = LinkAnalysis::build(SystemParams{});
  mc::SimWindow w;
  const double zs[] = {db_to_linear(-15.0), db_to_linear(5.0)};
  for (bool interferers : {false, true}) {
    mc::CoverageSimOptions k0, k10;
    k0.fading = mc::FadingSpec::rician(0.0);
    k10.fading = mc::FadingSpec::rician(10.0);
    k0.rician_interferers = k10.rician_interferers = interferers;
    const auto c0 = mc::simulate_coverage_curve(a, zs, Link::kPrimary, w, 40000, k0);
    const auto c10 = mc::simulate_coverage_curve(a, zs, Link::kPrimary, w, 40000, k10);
    MESSAGE("interferers rician=" << interferers << " low: K0 " << c0[0].value << " K10 " << c10[0].value
                                  << " high: K0 " << c0[1].value << " K10 " << c10[1].value);
    CHECK(c10[0].value > c0[0].value);
    CHECK(c10[1].value < c0[1].value);
  }
}

TEST_CASE("coupled secondaries: gap to the thinned model is reported") {
  const auto a = LinkAnalysis::build(SystemParams{});
  mc::SimWindow w;
  mc::CoverageSimOptions coupled;
  coupled.coupled = true;
  for (Link l : {Link::kPrimary, Link::kSecondary}) {
    const auto u = mc::simulate_coverage(a, 0.1, l, w, 3000);
    const auto c = mc::simulate_coverage(a, 0.1, l, w, 3000, coupled);
    MESSAGE(to_string(l) << " uncoupled " << u.value << " coupled " << c.value << " gap " << c.value - u.value);
    CHECK(c.value > 0.0);
    CHECK(c.value < 1.0);
    CHECK(std::abs(c.value - u.value) < 0.15);
  }
  coupled.realized_power = true;
  const auto r = mc::simulate_coverage(a, 0.1, Link::kSecondary, w, 2000, coupled);
  CHECK(r.value > 0.0);
  CHECK(r.value < 1.0);
}
