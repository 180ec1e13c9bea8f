#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twoslit/ensemble.hpp"
#include "twoslit/sqm.hpp"
#include "twoslit/stats.hpp"

namespace twoslit {

/// The two discriminating experiments.
///   symmetric: zero mean initial center of mass, s*T ~ 1, Y << sigma0.
///   selective: post-selected nonzero mean center of mass, s*T >> 1,
///              opposite-side coincident detection.
enum class ScenarioCase { symmetric, selective };

const char* to_string(ScenarioCase c) noexcept;
std::optional<ScenarioCase> scenario_case_from_string(std::string_view s) noexcept;

struct ScenarioConfig {
  ScenarioCase kind = ScenarioCase::symmetric;
  PhysicalParams params;
  ScreenConfig screen;
  SamplerConfig sampler;
  IntegratorConfig integ;
  double target_st = 1.0;     ///< s * T; must match s * D / u_x
  bool run_control = true;    ///< selective only: also run the zero-offset control

  double screen_time() const { return twoslit::screen_time(params, screen); }
};

/// One regime constraint. margin is the left/right ratio of the inequality
/// (or the raw value for range checks); "<<" means margin <= 0.1.
struct ConstraintCheck {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;
};

inline constexpr double kMuchLessThan = 0.1;

std::vector<ConstraintCheck> check_constraints(const ScenarioConfig& cfg);

/// Throws ConstraintViolatedError unless the configuration meets the case's
/// regime requirements (see README for the list).
void validate_scenario(const ScenarioConfig& cfg);

/// Detection-free interval around the axis among pooled terminal positions.
struct EmptyBand {
  bool found = false;  ///< false when every position sits on one side
  double lower = 0.0;
  double upper = 0.0;
  double length_measured = 0.0;
  double half_width_measured = 0.0;
  double L_predicted = 0.0;              ///< hbar T <y0> / (m sigma0^2), target <y0>
  double L_predicted_sample_mean = 0.0;  ///< same with the subensemble's mean y0
};

/// Gap between the largest position below zero and the smallest at or above
/// it, pooled over both particles of every pair.
EmptyBand measure_empty_band(std::span<const PairState> terminals);

/// hbar t <y0> / (m sigma0^2).
double empty_band_length(const PhysicalParams& p, double t, double mean_y0);

/// Standard-QM side of the selective experiment. Alternative (i) keeps the
/// joint detection probability and only renormalizes to opposite-side
/// outcomes; alternative (ii) makes no prediction for the selection.
struct SqmSelectiveAlternatives {
  double opposite_side_fraction = 0.0;  ///< P(y1 y2 < 0) at T
  double band_probability = 0.0;        ///< (i): P(a particle in the measured band | opposite sides)
  bool no_prediction = true;            ///< (ii)
};

struct EnsembleReport {
  ScenarioCase kind = ScenarioCase::symmetric;
  std::size_t n_pairs = 0;
  std::size_t n_completed = 0;  ///< completed and, for selective, passing the detection filter
  EnsembleCounts counts;
  double conditioning_mass = 1.0;
  double screen_time = 0.0;
  double spreading_parameter = 0.0;  ///< s * T
  double fringe_spacing = 0.0;       ///< delta y

  Histogram marginal_y1;
  Histogram marginal_y2;
  Histogram com_histogram;
  BinnedCurve sqm_marginal;

  double symmetry_metric = 0.0;  ///< mean |y1 + y2| at T in units of delta y
  double mean_initial_com = 0.0;
  double mean_terminal_com = 0.0;
  double bqm_asymmetric_fraction = 0.0;  ///< kept pairs outside mirror detector pairs

  std::optional<double> sqm_asymmetric_probability;
  std::optional<double> sqm_off_band_probability;  ///< P(|y1 + y2| > delta y / 2)
  std::optional<ChiSquareResult> marginal_chi_square;

  std::optional<EmptyBand> empty_band;
  std::optional<EmptyBand> control_band;
  std::optional<SqmSelectiveAlternatives> sqm_alternatives;

  std::vector<ConstraintCheck> constraint_checks;
  std::vector<std::string> notes;
};

struct ScenarioOutcome {
  EnsembleReport report;
  EnsembleResult ensemble;
};

EnsembleReport run_symmetric_case(const ScenarioConfig& cfg, const EnsembleOptions& opts = {});
EnsembleReport run_selective_case(const ScenarioConfig& cfg, const EnsembleOptions& opts = {});

/// Dispatches on cfg.kind and keeps the ensemble for serialization.
ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const EnsembleOptions& opts = {});

}  // namespace twoslit
