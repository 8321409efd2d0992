#include "wpcn/sweep.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>

#include "wpcn/access.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/meta.hpp"
#include "wpcn/montecarlo.hpp"

namespace wpcn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Kind { kEnergy, kTransmit, kCoverage, kRician, kThroughput, kMeta };

Kind kind_of(const std::string& name) {
  if (name == "energy-coverage") return Kind::kEnergy;
  if (name == "transmit-prob") return Kind::kTransmit;
  if (name == "coverage") return Kind::kCoverage;
  if (name == "coverage-rician") return Kind::kRician;
  if (name == "throughput") return Kind::kThroughput;
  if (name == "meta") return Kind::kMeta;
  throw ConfigError("sweep '" + name + "' does not produce a CSV");
}

bool zeta_axis(const std::string& a) { return a == "zeta" || a == "zeta_db"; }

// Axes along which the sampled geometry does not change, so one simulation
// serves the whole curve.
bool curve_axis(Kind k, const std::string& axis) {
  switch (k) {
    case Kind::kEnergy: return axis == "epsilon";
    case Kind::kCoverage:
    case Kind::kRician:
    case Kind::kThroughput: return zeta_axis(axis);
    case Kind::kMeta: return axis == "x";
    default: return false;
  }
}

SystemParams at_point(const SystemParams& p, Kind k, const std::string& axis, double v) {
  if (axis == "x" || (k == Kind::kEnergy && axis == "epsilon")) return p;
  return p.with([&](ParamValues& w) {
    if (axis == "lambda1") w.lambda1 = v;
    else if (axis == "lambda2") w.lambda2 = v;
    else if (axis == "p1") w.p1 = v;
    else if (axis == "t_i") w.t_i = v;
    else if (axis == "t_e") w.t_e = v;
    else if (axis == "d") w.d = v;
    else if (axis == "alpha") w.alpha = v;
    else if (axis == "sigma2") w.sigma2 = v;
    else if (axis == "epsilon") w.epsilon = v;
    else if (axis == "e_sat") w.e_sat = v;
    else if (axis == "rho") w.rho = v;
    else if (axis == "zeta") w.zeta = v;
    else if (axis == "zeta_db") w.zeta = db_to_linear(v);
  });
}

std::vector<std::string> analytic_columns(Kind k) {
  switch (k) {
    case Kind::kEnergy: return {"pi_eps_analytic"};
    case Kind::kTransmit: return {"pi_eps", "pi_rho", "pi_s", "lambda2_active"};
    case Kind::kCoverage: return {"p1_analytic", "p2_analytic", "p2_power"};
    case Kind::kRician: return {"k_factor", "p1_rayleigh_analytic", "p2_rayleigh_analytic"};
    case Kind::kThroughput: return {"t1_analytic", "t2_analytic", "p1_analytic", "p2_analytic", "lambda2_active"};
    case Kind::kMeta: return {"f1_analytic", "f2_analytic", "m1_primary", "m2_primary", "m1_secondary", "m2_secondary"};
  }
  return {};
}

std::vector<std::string> mc_columns(Kind k) {
  switch (k) {
    case Kind::kEnergy: return {"pi_eps_mc", "pi_eps_stderr"};
    case Kind::kTransmit:
      return {"pi_eps_mc", "pi_eps_stderr", "pi_rho_mc", "pi_rho_stderr", "pi_s_mc", "pi_s_stderr"};
    case Kind::kCoverage:
    case Kind::kRician: return {"p1_mc", "p1_stderr", "p2_mc", "p2_stderr"};
    case Kind::kThroughput: return {"t1_mc", "t1_stderr", "t2_mc", "t2_stderr"};
    case Kind::kMeta: return {"f1_mc", "f1_stderr", "f2_mc", "f2_stderr"};
  }
  return {};
}

bool simulates(Kind k, bool simulate) { return simulate || k == Kind::kRician; }

struct Row {
  std::vector<double> v;
  std::string flag = "ok";
};

// Runs `body`, mapping numerical failures to a row flag.
void guarded(Row& row, const std::function<void()>& body) {
  try {
    body();
  } catch (const NonConvergence&) {
    row.flag = "nonconvergence";
  } catch (const SecondaryUnpowered&) {
    if (row.flag == "ok") row.flag = "unpowered";
  } catch (const MomentViolation&) {
    row.flag = "moment_violation";
  }
}

struct Context {
  Kind kind;
  const std::string& axis;
  bool simulate;
  mc::SimWindow window;
  std::size_t samples;
  bool coupled;
};

mc::CoverageSimOptions sim_options(const Context& ctx, const ResolvedSeries& s, bool rician) {
  mc::CoverageSimOptions o;
  o.coupled = ctx.coupled;
  if (rician) {
    o.fading = mc::FadingSpec::rician(s.k_factor);
    o.rician_interferers = s.rician_interferers;
  }
  return o;
}

void put(Row& r, std::size_t i, const mc::Estimate& e) {
  r.v[i] = e.value;
  r.v[i + 1] = e.std_error;
}

// Binomial standard error of an empirical CCDF value.
mc::Estimate ccdf_estimate(const mc::MetaSample& s, double x) {
  const double f = s.ccdf(x);
  const double n = static_cast<double>(s.q.size());
  return {f, std::sqrt(f * (1.0 - f) / n), s.q.size()};
}

// Simulation shared by all points of a curve.
struct Curve {
  std::vector<double> energy;
  std::vector<mc::Estimate> cov[2];
  mc::MetaSample meta[2];
  std::string flag = "ok";
};

Curve simulate_curve(const Context& ctx, const ResolvedSeries& s, const std::vector<double>& grid) {
  Curve c;
  Row scratch;
  guarded(scratch, [&] {
    switch (ctx.kind) {
      case Kind::kEnergy:
        c.energy = mc::simulate_energy(s.params, ctx.window, ctx.samples);
        break;
      case Kind::kCoverage:
      case Kind::kRician:
      case Kind::kThroughput: {
        std::vector<double> zetas;
        for (double g : grid) zetas.push_back(ctx.axis == "zeta_db" ? db_to_linear(g) : g);
        const auto a = LinkAnalysis::build(s.params);
        const auto opt = sim_options(ctx, s, ctx.kind == Kind::kRician);
        c.cov[0] = mc::simulate_coverage_curve(a, zetas, Link::kPrimary, ctx.window, ctx.samples, opt);
        c.cov[1] = mc::simulate_coverage_curve(a, zetas, Link::kSecondary, ctx.window, ctx.samples, opt);
        break;
      }
      case Kind::kMeta: {
        const auto a = LinkAnalysis::build(s.params);
        const auto opt = sim_options(ctx, s, false);
        c.meta[0] = mc::simulate_meta(a, s.params.zeta(), Link::kPrimary, ctx.window, ctx.samples, 1, opt);
        c.meta[1] = mc::simulate_meta(a, s.params.zeta(), Link::kSecondary, ctx.window, ctx.samples, 1, opt);
        break;
      }
      default:
        break;
    }
  });
  c.flag = scratch.flag;
  return c;
}

Row evaluate(const Context& ctx, const ResolvedSeries& s, double x, std::size_t index, const Curve* curve) {
  const auto na = analytic_columns(ctx.kind).size();
  const bool sim = simulates(ctx.kind, ctx.simulate);
  Row row;
  row.v.assign(na + (sim ? mc_columns(ctx.kind).size() : 0), kNaN);
  const SystemParams p = at_point(s.params, ctx.kind, ctx.axis, x);
  const bool use_curve = curve != nullptr;
  if (use_curve && curve->flag != "ok") row.flag = curve->flag;
  const double zeta = p.zeta();

  switch (ctx.kind) {
    case Kind::kEnergy: {
      const double thr = ctx.axis == "epsilon" ? x : p.epsilon();
      guarded(row, [&] { row.v[0] = EnergyLaw(p).energy_ccdf(thr); });
      if (sim) {
        if (use_curve) {
          if (!curve->energy.empty()) put(row, na, mc::empirical_ccdf(curve->energy, thr));
        } else {
          put(row, na, mc::empirical_ccdf(mc::simulate_energy(p, ctx.window, ctx.samples), thr));
        }
      }
      break;
    }
    case Kind::kTransmit: {
      guarded(row, [&] {
        const auto r = analyze_access(EnergyLaw(p));
        row.v[0] = r.pi_eps;
        row.v[1] = r.pi_rho;
        row.v[2] = r.pi_s;
        row.v[3] = r.lambda2_active;
      });
      if (sim) {
        const auto e = mc::simulate_access(p, ctx.window, ctx.samples);
        put(row, na, e.pi_eps);
        put(row, na + 2, e.pi_rho);
        put(row, na + 4, e.pi_s);
      }
      break;
    }
    case Kind::kCoverage:
    case Kind::kRician:
    case Kind::kThroughput: {
      const bool rician = ctx.kind == Kind::kRician;
      std::optional<LinkAnalysis> a;
      guarded(row, [&] { a.emplace(LinkAnalysis::build(p)); });
      if (!a) break;
      double pc[2] = {kNaN, kNaN};
      guarded(row, [&] { pc[0] = a->coverage_prob(zeta, Link::kPrimary); });
      guarded(row, [&] { pc[1] = a->coverage_prob(zeta, Link::kSecondary); });
      if (ctx.kind == Kind::kCoverage) {
        row.v[0] = pc[0];
        row.v[1] = pc[1];
        row.v[2] = a->p2();
      } else if (rician) {
        row.v[0] = s.k_factor;
        row.v[1] = pc[0];
        row.v[2] = pc[1];
      } else {
        const double scale = p.t_i() * p.rate_at(zeta);
        row.v[0] = scale * p.lambda1() * pc[0];
        row.v[1] = a->p2() > 0.0 ? scale * a->lambda2_active() * pc[1] : 0.0;
        row.v[2] = pc[0];
        row.v[3] = pc[1];
        row.v[4] = a->lambda2_active();
      }
      if (!sim) break;
      mc::Estimate est[2];
      if (use_curve) {
        for (int l = 0; l < 2; ++l)
          if (!curve->cov[l].empty()) est[l] = curve->cov[l][index];
          else est[l] = {kNaN, kNaN, 0};
      } else {
        const auto opt = sim_options(ctx, s, rician);
        guarded(row, [&] { est[0] = mc::simulate_coverage(*a, zeta, Link::kPrimary, ctx.window, ctx.samples, opt); });
        est[1] = {kNaN, kNaN, 0};
        guarded(row, [&] { est[1] = mc::simulate_coverage(*a, zeta, Link::kSecondary, ctx.window, ctx.samples, opt); });
      }
      if (ctx.kind == Kind::kThroughput) {
        const double scale = p.t_i() * p.rate_at(zeta);
        const double dens[2] = {p.lambda1(), a->lambda2_active()};
        for (int l = 0; l < 2; ++l) {
          est[l].value *= scale * dens[l];
          est[l].std_error *= scale * dens[l];
        }
      }
      put(row, na, est[0]);
      put(row, na + 2, est[1]);
      break;
    }
    case Kind::kMeta: {
      std::optional<LinkAnalysis> a;
      guarded(row, [&] { a.emplace(LinkAnalysis::build(p)); });
      if (!a) break;
      const Link links[2] = {Link::kPrimary, Link::kSecondary};
      for (int l = 0; l < 2; ++l) {
        guarded(row, [&] {
          MetaDistribution md(*a, zeta, links[l]);
          row.v[l] = md.ccdf(x);
          row.v[2 + 2 * l] = md.moments().m1;
          row.v[3 + 2 * l] = md.moments().m2;
        });
      }
      if (!sim) break;
      for (int l = 0; l < 2; ++l) {
        if (use_curve) {
          if (!curve->meta[l].q.empty()) put(row, na + 2 * l, ccdf_estimate(curve->meta[l], x));
        } else {
          guarded(row, [&] {
            const auto m = mc::simulate_meta(*a, zeta, links[l], ctx.window, ctx.samples, 1, sim_options(ctx, s, false));
            put(row, na + 2 * l, ccdf_estimate(m, x));
          });
        }
      }
      break;
    }
  }
  return row;
}

}  // namespace

std::vector<std::string> sweep_columns(const ExperimentConfig& config, bool simulate) {
  const Kind k = kind_of(config.sweep.name);
  std::vector<std::string> cols{"series", config.sweep.swept_param};
  for (auto& c : analytic_columns(k)) cols.push_back(c);
  if (simulates(k, simulate))
    for (auto& c : mc_columns(k)) cols.push_back(c);
  cols.push_back("flag");
  return cols;
}

SweepOutcome write_sweep(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv) {
  config.sweep.validate();
  const Kind kind = kind_of(config.sweep.name);
  const auto series = resolve_series(config);
  const auto& grid = config.sweep.grid;
  for (const auto& s : series)
    for (double g : grid) {
      try {
        at_point(s.params, kind, config.sweep.swept_param, g);
      } catch (const DomainError& e) {
        throw ConfigError("series '" + s.name + "', " + config.sweep.swept_param + " = " + format_number(g) +
                          ": " + e.what());
      }
    }

  Context ctx{kind, config.sweep.swept_param, options.simulate, {}, config.sim.samples, config.sim.coupled};
  ctx.window.disk_radius = config.sim.disk_radius;
  ctx.window.replicates = options.replicates.value_or(config.sim.replicates);
  ctx.window.master_seed = options.seed.value_or(config.sim.seed);
  ctx.window.validate();
  const bool sim = simulates(kind, options.simulate);

  const auto cols = sweep_columns(config, options.simulate);
  for (std::size_t i = 0; i < cols.size(); ++i) csv << (i ? "," : "") << cols[i];
  csv << "\n";

  SweepOutcome out;
  for (const auto& s : series) {
    std::optional<Curve> curve;
    if (sim && curve_axis(kind, ctx.axis)) curve = simulate_curve(ctx, s, grid);
    std::vector<Row> rows(grid.size());
    const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i)
      rows[i] = evaluate(ctx, s, grid[i], static_cast<std::size_t>(i), curve ? &*curve : nullptr);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      csv << s.name << "," << format_number(grid[i]);
      for (double v : rows[i].v) csv << "," << format_number(v);
      csv << "," << rows[i].flag << "\n";
      ++out.rows;
      if (rows[i].flag != "ok") ++out.flagged;
      if (rows[i].flag == "nonconvergence") ++out.nonconverged;
    }
  }
  return out;
}

SweepOutcome run_sweep(const ExperimentConfig& config, const RunOptions& options, std::ostream& summary) {
  const std::string path = options.out.value_or(config.sweep.output_path);
  std::ofstream file(path);
  if (!file) throw ConfigError(path + ": cannot open output file");
  const auto t0 = std::chrono::steady_clock::now();
  SweepOutcome out = write_sweep(config, options, file);
  out.path = path;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  summary << "sweep " << config.sweep.name << ": " << out.rows << " rows -> " << path << " ("
          << format_number(secs, 3) << " s";
  if (out.flagged) summary << ", " << out.flagged << " flagged, " << out.nonconverged << " non-converged";
  summary << ")\n";
  return out;
}

}  // namespace wpcn
