// wpcn: figure sweeps and the analytic-versus-simulation check.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wpcn/errors.hpp"
#include "wpcn/sweep.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfigError = 1, kNonConvergence = 2, kValidationFailed = 3 };

fs::path preset_dir() {
  if (const char* env = std::getenv("WPCN_PRESET_DIR")) return env;
  return WPCN_PRESET_DIR;
}

// A path to an existing file, or the name of a bundled preset.
std::string resolve(const std::string& arg) {
  if (fs::is_regular_file(arg)) return arg;
  const fs::path p = preset_dir() / (arg + ".cfg");
  if (fs::is_regular_file(p)) return p.string();
  throw wpcn::ConfigError("'" + arg + "' is neither a config file nor a preset (see list-presets)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous primary / wireless-powered secondary network analysis"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a sweep from a preset or config file");
  std::string target;
  wpcn::RunOptions opts;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::string out;
  run->add_option("config", target, "Preset name or config path")->required();
  run->add_flag("--simulate", opts.simulate, "Add Monte Carlo columns");
  auto* rep_opt = run->add_option("--replicates", replicates, "Independent RNG streams")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Master seed");
  auto* out_opt = run->add_option("--out", out, "CSV output path");

  auto* validate = app.add_subcommand("validate", "Compare analysis against simulation");
  std::uint64_t vseed = 20190101;
  std::string vout;
  validate->add_option("--seed", vseed, "Master seed");
  validate->add_option("--out", vout, "Also write the table as CSV");

  auto* list = app.add_subcommand("list-presets", "List bundled presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      std::vector<std::string> names;
      for (const auto& e : fs::directory_iterator(preset_dir()))
        if (e.path().extension() == ".cfg") names.push_back(e.path().stem().string());
      std::sort(names.begin(), names.end());
      for (const auto& n : names) {
        const auto cfg = wpcn::load_config((preset_dir() / (n + ".cfg")).string());
        std::cout << n << "\t" << cfg.sweep.name << "\t" << cfg.sweep.swept_param << "\n";
      }
      return kOk;
    }
    if (*validate) {
      const auto rows = wpcn::run_validation(vseed);
      const bool ok = wpcn::report_validation(rows, std::cout);
      if (!vout.empty()) {
        std::ofstream f(vout);
        if (!f) throw wpcn::ConfigError(vout + ": cannot open output file");
        wpcn::write_validation_csv(rows, f);
      }
      return ok ? kOk : kValidationFailed;
    }
    const auto cfg = wpcn::load_config(resolve(target));
    if (*rep_opt) opts.replicates = replicates;
    if (*seed_opt) opts.seed = seed;
    if (*out_opt) opts.out = out;
    if (cfg.sweep.name == "validate") {
      const auto rows = wpcn::run_validation(opts.seed.value_or(cfg.sim.seed), opts.replicates.value_or(cfg.sim.replicates));
      const bool ok = wpcn::report_validation(rows, std::cout);
      if (opts.out || !cfg.sweep.output_path.empty()) {
        const std::string path = opts.out.value_or(cfg.sweep.output_path);
        std::ofstream f(path);
        if (!f) throw wpcn::ConfigError(path + ": cannot open output file");
        wpcn::write_validation_csv(rows, f);
      }
      return ok ? kOk : kValidationFailed;
    }
    const auto outcome = wpcn::run_sweep(cfg, opts, std::cout);
    return outcome.nonconverged ? kNonConvergence : kOk;
  } catch (const wpcn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const wpcn::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const wpcn::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kNonConvergence;
  }
}
