#pragma once

#include <string>

#include "twoslit/config.hpp"

namespace twoslit {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config_error = 2;
inline constexpr int runtime_rejection = 3;
}  // namespace exit_code

/// Rejected-trajectory fraction at or above which a run exits with
/// exit_code::runtime_rejection (outputs are still written).
inline constexpr double kRejectionBudget = 1e-3;

const char* library_version() noexcept;

/// Report as a JSON document (the "report" object of summary.json).
std::string report_to_json(const EnsembleReport& report);

/// Runs the scenario and writes into run.output_dir:
///   summary.json, marginal_hist.csv, com_hist.csv, sqm_marginal.csv and,
///   when run.emit_trajectories, trajectories.csv.
/// Returns an exit_code value; errors are reported on stderr.
int execute(const RunConfig& run, const EnsembleOptions& opts = {});

}  // namespace twoslit
