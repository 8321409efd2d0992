#pragma once

// Experiment configuration: flat `key = value` lines, `#` comments, and
// optional `[series NAME]` blocks whose keys override the base block for
// one curve of a sweep.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wpcn/params.hpp"

namespace wpcn {

/// Sweep names accepted by `run`.
inline constexpr const char* kSweepNames[] = {"energy-coverage", "transmit-prob", "coverage",
                                              "coverage-rician", "throughput",    "meta",
                                              "validate"};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct SweepSpec {
  std::string name;
  std::string swept_param;  ///< SystemParams field, zeta_db, or x
  std::vector<double> grid; ///< strictly increasing
  std::string output_path;

  void validate() const;
};

struct SeriesSpec {
  std::string name;
  KeyValues overrides;  ///< as written, applied on top of the base block
};

struct SimSettings {
  std::size_t samples = 100000;
  double disk_radius = 25.0;
  std::size_t replicates = 64;
  std::uint64_t seed = 20190101;
  bool coupled = false;
};

struct ExperimentConfig {
  ParamValues base;
  SweepSpec sweep;
  std::vector<SeriesSpec> series;  ///< empty means one unnamed series
  SimSettings sim;
  double k_factor = 0.0;           ///< Rician K for the base block
  bool rician_interferers = false;
};

/// One fully resolved curve of a sweep.
struct ResolvedSeries {
  std::string name;
  SystemParams params;
  double k_factor = 0.0;
  bool rician_interferers = false;
};

/// Parses a configuration file. Throws ConfigError naming the line and key.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Effective configuration as text; parse_config(write_config(c)) == c.
std::string write_config(const ExperimentConfig& config);

/// Applies series overrides to the base block and validates the result.
std::vector<ResolvedSeries> resolve_series(const ExperimentConfig& config);

/// Locale-independent number formatting with `digits` significant digits.
std::string format_number(double v, int digits = 9);

bool operator==(const SweepSpec& a, const SweepSpec& b);
bool operator==(const SeriesSpec& a, const SeriesSpec& b);
bool operator==(const SimSettings& a, const SimSettings& b);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace wpcn
