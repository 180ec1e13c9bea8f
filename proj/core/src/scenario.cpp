#include "twoslit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twoslit/errors.hpp"

namespace twoslit {

const char* to_string(ScenarioCase c) noexcept {
  return c == ScenarioCase::symmetric ? "symmetric_3_1" : "selective_3_2";
}

std::optional<ScenarioCase> scenario_case_from_string(std::string_view s) noexcept {
  if (s == "symmetric_3_1") return ScenarioCase::symmetric;
  if (s == "selective_3_2") return ScenarioCase::selective;
  return std::nullopt;
}

double empty_band_length(const PhysicalParams& p, double t, double mean_y0) {
  return p.hbar * t * mean_y0 / (p.mass * p.sigma0 * p.sigma0);
}

std::vector<ConstraintCheck> check_constraints(const ScenarioConfig& cfg) {
  const PhysicalParams& p = cfg.params;
  const double Y = p.slit_offset;
  std::vector<ConstraintCheck> out;

  const double small = Y / p.sigma0;
  out.push_back({"slit_offset_below_sigma0", small <= kMuchLessThan, small});

  const double sym = Y / (2.0 * std::numbers::pi * p.sigma0);
  out.push_back({"slit_offset_below_2pi_sigma0", sym <= kMuchLessThan, sym});

  if (Y > 0.0 && p.kx > 0.0 && cfg.screen.distance_D > 0.0) {
    // Center-of-mass spread at the screen against the fringe spacing, with
    // the equilibrium initial spread taken as sigma0.
    const double st = p.spreading_rate() * cfg.screen_time();
    const double spread = p.sigma0 * std::sqrt(1.0 + st * st);
    const double ratio = spread / fringe_spacing(p, cfg.screen).from_time;
    out.push_back({"com_spread_below_fringe_spacing", ratio <= kMuchLessThan, ratio});
  }

  const double st = cfg.target_st;
  const bool regime = cfg.kind == ScenarioCase::symmetric ? (st >= 0.5 && st <= 2.0) : st >= 10.0;
  out.push_back({"spreading_regime", regime, st});

  if (const auto* w = std::get_if<ComOffset>(&cfg.sampler.conditioning); w && w->mean != 0.0) {
    const double ratio = p.sigma0 / std::abs(w->mean);
    out.push_back({"sigma0_below_mean_offset", ratio <= kMuchLessThan, ratio});
  }
  return out;
}

void validate_scenario(const ScenarioConfig& cfg) {
  cfg.params.validate();
  cfg.screen.validate(cfg.params);
  cfg.sampler.validate();
  cfg.integ.validate();

  const PhysicalParams& p = cfg.params;
  const double st = p.spreading_rate() * cfg.screen_time();
  if (std::abs(st - cfg.target_st) > 1e-9 * std::max(1.0, cfg.target_st))
    throw ConstraintViolatedError("s*T from the screen geometry (" + std::to_string(st) +
                                  ") does not match target_st (" + std::to_string(cfg.target_st) +
                                  ")");

  if (cfg.kind == ScenarioCase::symmetric) {
    if (p.slit_offset > kMuchLessThan * p.sigma0 * (1.0 + 1e-12))
      throw ConstraintViolatedError("symmetric_3_1 requires Y <= 0.1*sigma0");
    if (st < 0.5 || st > 2.0)
      throw ConstraintViolatedError("symmetric_3_1 requires s*T in [0.5, 2]");
    if (p.slit_offset / (2.0 * std::numbers::pi * p.sigma0) > kMuchLessThan)
      throw ConstraintViolatedError("symmetric_3_1 requires Y << 2*pi*sigma0");
  } else {
    if (st < 10.0) throw ConstraintViolatedError("selective_3_2 requires s*T >= 10");
    const auto* w = std::get_if<ComOffset>(&cfg.sampler.conditioning);
    if (w == nullptr)
      throw ConstraintViolatedError("selective_3_2 requires com_offset conditioning");
    if (w->mean < 3.0 * p.sigma0 * (1.0 - 1e-12))
      throw ConstraintViolatedError("selective_3_2 requires a com_offset mean >= 3*sigma0");
  }
}

EmptyBand measure_empty_band(std::span<const PairState> terminals) {
  double below = -std::numeric_limits<double>::infinity();
  double above = std::numeric_limits<double>::infinity();
  for (const PairState& s : terminals) {
    for (const double y : {s.y1, s.y2}) {
      if (y < 0.0)
        below = std::max(below, y);
      else
        above = std::min(above, y);
    }
  }
  EmptyBand b;
  b.found = std::isfinite(below) && std::isfinite(above);
  if (b.found) {
    b.lower = below;
    b.upper = above;
    b.length_measured = above - below;
    b.half_width_measured = 0.5 * b.length_measured;
  }
  return b;
}

namespace {

struct Kept {
  std::vector<PairState> initial;
  std::vector<PairState> terminal;
};

Kept kept_pairs(const EnsembleResult& e) {
  Kept k;
  for (const Trajectory& tr : e.trajectories) {
    if (tr.status != TrajectoryStatus::completed) continue;
    k.initial.push_back(tr.initial);
    k.terminal.push_back(tr.terminal);
  }
  return k;
}

// Marks completed pairs that were not detected on opposite sides.
void apply_detection_filter(EnsembleResult& e) {
  for (Trajectory& tr : e.trajectories) {
    if (tr.status != TrajectoryStatus::completed) continue;
    if (!(tr.terminal.y1 * tr.terminal.y2 < 0.0)) {
      tr.status = TrajectoryStatus::rejected_condition;
      --e.counts.completed;
      ++e.counts.rejected_condition;
    }
  }
}

double mean_com(std::span<const PairState> s) {
  if (s.empty()) return 0.0;
  double sum = 0.0;
  for (const PairState& x : s) sum += 0.5 * (x.y1 + x.y2);
  return sum / static_cast<double>(s.size());
}

// Fraction of on-screen pairs whose detectors are not mirror partners.
double asymmetric_fraction(const ScreenConfig& screen, std::span<const PairState> s) {
  std::size_t on = 0, mirror = 0;
  const auto bin = [&](double y) -> std::ptrdiff_t {
    const double f = std::floor((y - screen.y_min) / screen.bin_delta);
    if (!(f >= 0.0) || f >= static_cast<double>(screen.n_bins)) return -1;
    return static_cast<std::ptrdiff_t>(f);
  };
  for (const PairState& x : s) {
    const auto i = bin(x.y1);
    const auto j = bin(x.y2);
    if (i < 0 || j < 0) continue;
    ++on;
    if (i + j == static_cast<std::ptrdiff_t>(screen.n_bins) - 1) ++mirror;
  }
  return on == 0 ? 0.0 : 1.0 - static_cast<double>(mirror) / static_cast<double>(on);
}

EnsembleReport base_report(const ScenarioConfig& cfg, const EnsembleResult& e, const Kept& kept) {
  const PhysicalParams& p = cfg.params;
  const ScreenConfig& screen = cfg.screen;
  EnsembleReport r;
  r.kind = cfg.kind;
  r.n_pairs = cfg.sampler.n_pairs;
  r.counts = e.counts;
  r.n_completed = kept.terminal.size();
  r.conditioning_mass = e.conditioning_mass;
  r.screen_time = cfg.screen_time();
  r.spreading_parameter = p.spreading_rate() * r.screen_time;
  if (p.slit_offset > 0.0) r.fringe_spacing = fringe_spacing(p, screen).from_time;

  r.marginal_y1 = Histogram::over(screen.y_min, screen.y_max, screen.n_bins);
  r.marginal_y2 = r.marginal_y1;
  r.com_histogram = r.marginal_y1;
  double abs_sum = 0.0;
  for (const PairState& s : kept.terminal) {
    r.marginal_y1.add(s.y1);
    r.marginal_y2.add(s.y2);
    r.com_histogram.add(0.5 * (s.y1 + s.y2));
    abs_sum += std::abs(s.y1 + s.y2);
  }
  if (!kept.terminal.empty() && r.fringe_spacing > 0.0)
    r.symmetry_metric = abs_sum / static_cast<double>(kept.terminal.size()) / r.fringe_spacing;
  r.mean_initial_com = mean_com(kept.initial);
  r.mean_terminal_com = mean_com(kept.terminal);
  r.bqm_asymmetric_fraction = asymmetric_fraction(screen, kept.terminal);
  r.sqm_marginal = marginal_density(p, r.screen_time, screen);
  r.constraint_checks = check_constraints(cfg);
  return r;
}

EnsembleReport symmetric_report(const ScenarioConfig& cfg, EnsembleResult& e) {
  const PhysicalParams& p = cfg.params;
  const Kept kept = kept_pairs(e);
  EnsembleReport r = base_report(cfg, e, kept);
  if (!(r.fringe_spacing > 0.0))
    throw DegenerateGeometryError("symmetry metric needs a positive fringe spacing (Y > 0)");

  r.sqm_asymmetric_probability = sqm_asymmetric_probability(p, cfg.screen);
  r.sqm_off_band_probability = sqm_off_band_probability(p, r.screen_time, 0.5 * r.fringe_spacing);

  if (std::holds_alternative<NoConditioning>(cfg.sampler.conditioning) && r.n_completed > 0) {
    // Fold the tails into the edge bins so every pair is counted.
    std::vector<std::size_t> observed = r.marginal_y1.counts;
    observed.front() += r.marginal_y1.underflow;
    observed.back() += r.marginal_y1.overflow;
    std::vector<double> expected = r.sqm_marginal.values;
    constexpr double inf = std::numeric_limits<double>::infinity();
    expected.front() += marginal_mass(p, -inf, cfg.screen.y_min, r.screen_time);
    expected.back() += marginal_mass(p, cfg.screen.y_max, inf, r.screen_time);
    r.marginal_chi_square = chi_square_test(observed, expected);
  }
  r.notes.push_back(
      "symmetry_metric is mean |y1+y2| at the screen over the fringe spacing; the trajectory "
      "model predicts it well below 1. sqm_asymmetric_probability is the standard-QM probability "
      "that a coincidence is not in a mirror-symmetric detector pair.");
  return r;
}

EnsembleReport selective_report(const ScenarioConfig& cfg, EnsembleResult& e,
                                const EnsembleOptions& opts) {
  const PhysicalParams& p = cfg.params;
  apply_detection_filter(e);
  const Kept kept = kept_pairs(e);
  EnsembleReport r = base_report(cfg, e, kept);
  const double T = r.screen_time;
  const auto& window = std::get<ComOffset>(cfg.sampler.conditioning);

  EmptyBand band = measure_empty_band(kept.terminal);
  band.L_predicted = empty_band_length(p, T, window.mean);
  band.L_predicted_sample_mean = empty_band_length(p, T, r.mean_initial_com);
  r.empty_band = band;

  if (cfg.run_control) {
    SamplerConfig control = cfg.sampler;
    control.conditioning = ComOffset{0.0, window.width, window.opposite_sides};
    EnsembleResult ce = run_ensemble(p, control, cfg.integ, T, opts);
    apply_detection_filter(ce);
    const Kept ck = kept_pairs(ce);
    EmptyBand cb = measure_empty_band(ck.terminal);
    cb.L_predicted = 0.0;
    cb.L_predicted_sample_mean = empty_band_length(p, T, mean_com(ck.initial));
    r.control_band = cb;
    r.counts.axis_crossings += ce.counts.axis_crossings;
  }

  SqmSelectiveAlternatives sqm;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double below = marginal_mass(p, -inf, 0.0, T);
  const double above = marginal_mass(p, 0.0, inf, T);
  sqm.opposite_side_fraction = 2.0 * below * above / ((below + above) * (below + above));
  if (band.found) {
    const double p_low = band.lower < 0.0 ? marginal_mass(p, band.lower, 0.0, T) / below : 0.0;
    const double p_high = band.upper > 0.0 ? marginal_mass(p, 0.0, band.upper, T) / above : 0.0;
    sqm.band_probability = 1.0 - (1.0 - p_low) * (1.0 - p_high);
  }
  r.sqm_alternatives = sqm;
  r.sqm_asymmetric_probability = sqm_asymmetric_probability(p, cfg.screen);

  r.notes.push_back(
      "empty_band reproduces a disputed pilot-wave prediction under post-selection; it is a "
      "measurement of the model, not physical ground truth.");
  r.notes.push_back(
      "A nonzero mean initial center of mass is realized by conditioning the equilibrium "
      "ensemble on a center-of-mass window; conditioning_mass is the equilibrium probability "
      "of that window.");
  return r;
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const EnsembleOptions& opts) {
  validate_scenario(cfg);
  ScenarioOutcome out;
  out.ensemble = run_ensemble(cfg.params, cfg.sampler, cfg.integ, cfg.screen_time(), opts);
  out.report = cfg.kind == ScenarioCase::symmetric ? symmetric_report(cfg, out.ensemble)
                                                   : selective_report(cfg, out.ensemble, opts);
  return out;
}

EnsembleReport run_symmetric_case(const ScenarioConfig& cfg, const EnsembleOptions& opts) {
  if (cfg.kind != ScenarioCase::symmetric)
    throw ConstraintViolatedError("run_symmetric_case needs case symmetric_3_1");
  return run_scenario(cfg, opts).report;
}

EnsembleReport run_selective_case(const ScenarioConfig& cfg, const EnsembleOptions& opts) {
  if (cfg.kind != ScenarioCase::selective)
    throw ConstraintViolatedError("run_selective_case needs case selective_3_2");
  return run_scenario(cfg, opts).report;
}

}  // namespace twoslit
