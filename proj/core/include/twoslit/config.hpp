#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "twoslit/scenario.hpp"

namespace twoslit {

struct RunConfig {
  ScenarioConfig scenario;
  std::filesystem::path output_dir = "twoslit_out";
  bool emit_trajectories = false;
  std::size_t trajectory_sample_stride = 1;
};

/// Parses and validates a JSON run configuration.
///
/// Unknown keys are rejected. Defaults: hbar = mass = amplitude = 1,
/// ky = 0, n_pairs = 1e5, rk45 with tol 1e-8. Either D or target_st must be
/// given (the other is derived from s * D / u_x). Every failure is a
/// ConfigError naming the offending field path, e.g. "integrator.tol".
RunConfig parse_config(std::string_view text);

/// Canonical JSON echo of a resolved configuration (parse_config accepts it).
std::string config_to_json(const RunConfig& run);

}  // namespace twoslit
