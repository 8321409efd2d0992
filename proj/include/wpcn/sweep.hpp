#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wpcn/config.hpp"

namespace wpcn {

struct RunOptions {
  bool simulate = false;
  std::optional<std::size_t> replicates;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

struct SweepOutcome {
  std::size_t rows = 0;
  std::size_t nonconverged = 0;  ///< rows flagged "nonconvergence"
  std::size_t flagged = 0;       ///< rows with any flag other than "ok"
  std::string path;
};

/// Column names of a sweep's CSV, in output order.
std::vector<std::string> sweep_columns(const ExperimentConfig& config, bool simulate);

/// Evaluates every (series, grid point) row and writes the CSV to `csv`.
SweepOutcome write_sweep(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv);

/// Writes the CSV to the configured (or overridden) path and a short summary
/// to `summary`.
SweepOutcome run_sweep(const ExperimentConfig& config, const RunOptions& options, std::ostream& summary);

struct ValidationRow {
  std::string quantity;
  double analytic = 0.0;
  double simulated = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  bool gating = true;  ///< false for reported-only rows
  bool pass = true;

  double delta() const { return simulated - analytic; }
};

/// Analytic-versus-simulation table at the default parameters.
std::vector<ValidationRow> run_validation(std::uint64_t seed, std::size_t replicates = 64);

/// Prints the table and returns true iff every gating row passes.
bool report_validation(const std::vector<ValidationRow>& rows, std::ostream& out);
void write_validation_csv(const std::vector<ValidationRow>& rows, std::ostream& csv);

}  // namespace wpcn
