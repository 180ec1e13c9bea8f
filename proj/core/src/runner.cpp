#include "twoslit/runner.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "twoslit/errors.hpp"

#ifndef TWOSLIT_VERSION
#define TWOSLIT_VERSION "0.0.0"
#endif

namespace twoslit {

namespace {

using json = nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json histogram_json(const Histogram& h) {
  return {{"y_min", h.y_min},         {"bin_width", h.bin_width}, {"counts", h.counts},
          {"underflow", h.underflow}, {"overflow", h.overflow},   {"total", h.total()}};
}

json band_json(const EmptyBand& b) {
  return {{"found", b.found},
          {"lower", b.lower},
          {"upper", b.upper},
          {"length_measured", b.length_measured},
          {"half_width_measured", b.half_width_measured},
          {"L_predicted", b.L_predicted},
          {"L_predicted_sample_mean", b.L_predicted_sample_mean},
          {"ratio_to_prediction",
           b.L_predicted > 0.0 ? json(b.length_measured / b.L_predicted) : json(nullptr)}};
}

json report_json(const EnsembleReport& r) {
  json j;
  j["case"] = to_string(r.kind);
  j["n_pairs"] = r.n_pairs;
  j["n_completed"] = r.n_completed;
  j["counts"] = {{"completed", r.counts.completed},
                 {"rejected_node", r.counts.rejected_node},
                 {"rejected_condition", r.counts.rejected_condition},
                 {"sampler_proposals", r.counts.proposals},
                 {"axis_crossings", r.counts.axis_crossings},
                 {"rejection_fraction", r.counts.rejection_fraction()}};
  j["conditioning_mass"] = r.conditioning_mass;
  j["screen_time"] = r.screen_time;
  j["spreading_parameter"] = r.spreading_parameter;
  j["fringe_spacing"] = r.fringe_spacing;
  j["symmetry_metric"] = r.symmetry_metric;
  j["mean_initial_com"] = r.mean_initial_com;
  j["mean_terminal_com"] = r.mean_terminal_com;
  j["bqm_asymmetric_fraction"] = r.bqm_asymmetric_fraction;
  j["sqm_asymmetric_probability"] =
      r.sqm_asymmetric_probability ? json(*r.sqm_asymmetric_probability) : json(nullptr);
  j["sqm_off_band_probability"] =
      r.sqm_off_band_probability ? json(*r.sqm_off_band_probability) : json(nullptr);
  if (r.marginal_chi_square)
    j["marginal_chi_square"] = {{"statistic", r.marginal_chi_square->statistic},
                                {"dof", r.marginal_chi_square->dof},
                                {"p_value", r.marginal_chi_square->p_value}};
  else
    j["marginal_chi_square"] = nullptr;
  j["empty_band"] = r.empty_band ? band_json(*r.empty_band) : json(nullptr);
  j["control_band"] = r.control_band ? band_json(*r.control_band) : json(nullptr);
  if (r.sqm_alternatives)
    j["sqm_alternatives"] = {
        {"renormalized_opposite_side_fraction", r.sqm_alternatives->opposite_side_fraction},
        {"renormalized_band_probability", r.sqm_alternatives->band_probability},
        {"no_prediction", r.sqm_alternatives->no_prediction}};
  else
    j["sqm_alternatives"] = nullptr;
  j["marginal_histograms"] = {{"y1", histogram_json(r.marginal_y1)},
                              {"y2", histogram_json(r.marginal_y2)}};
  j["com_histogram"] = histogram_json(r.com_histogram);
  json checks = json::array();
  for (const auto& c : r.constraint_checks)
    checks.push_back({{"name", c.name}, {"satisfied", c.satisfied}, {"margin", c.margin}});
  j["constraint_checks"] = checks;
  j["notes"] = r.notes;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_outputs(const RunConfig& run, const ScenarioOutcome& outcome) {
  const auto& dir = run.output_dir;
  const EnsembleReport& r = outcome.report;

  json summary;
  summary["timestamp"] = utc_timestamp();
  summary["versions"] = {{"twoslit", library_version()},
                         {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                               std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                               std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  summary["seed"] = run.scenario.sampler.seed;
  summary["config"] = json::parse(config_to_json(run));
  summary["report"] = report_json(r);
  open_out(dir / "summary.json") << summary.dump(2) << '\n';

  {
    auto out = open_out(dir / "marginal_hist.csv");
    out << "bin_lo,bin_hi,count_y1,count_y2\n";
    for (std::size_t i = 0; i < r.marginal_y1.counts.size(); ++i)
      out << num(r.marginal_y1.bin_lo(i)) << ',' << num(r.marginal_y1.bin_hi(i)) << ','
          << r.marginal_y1.counts[i] << ',' << r.marginal_y2.counts[i] << '\n';
  }
  {
    auto out = open_out(dir / "com_hist.csv");
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < r.com_histogram.counts.size(); ++i)
      out << num(r.com_histogram.bin_lo(i)) << ',' << num(r.com_histogram.bin_hi(i)) << ','
          << r.com_histogram.counts[i] << '\n';
  }
  {
    auto out = open_out(dir / "sqm_marginal.csv");
    out << "bin_lo,bin_hi,probability\n";
    for (std::size_t i = 0; i < r.sqm_marginal.values.size(); ++i)
      out << num(r.sqm_marginal.bin_lo(i)) << ',' << num(r.sqm_marginal.bin_hi(i)) << ','
          << num(r.sqm_marginal.values[i]) << '\n';
  }
  const auto traj_path = dir / "trajectories.csv";
  if (run.emit_trajectories) {
    auto out = open_out(traj_path);
    out << "pair,t,y1,y2\n";
    const auto& trs = outcome.ensemble.trajectories;
    for (std::size_t i = 0; i < trs.size(); ++i) {
      if (trs[i].status != TrajectoryStatus::completed) continue;
      for (const PairState& s : trs[i].samples)
        out << i << ',' << num(s.t) << ',' << num(s.y1) << ',' << num(s.y2) << '\n';
    }
  } else {
    std::filesystem::remove(traj_path);
  }
}

}  // namespace

const char* library_version() noexcept { return TWOSLIT_VERSION; }

std::string report_to_json(const EnsembleReport& report) { return report_json(report).dump(2); }

int execute(const RunConfig& run, const EnsembleOptions& opts) {
  try {
    std::filesystem::create_directories(run.output_dir);
    EnsembleOptions o = opts;
    o.sample_stride = run.emit_trajectories ? run.trajectory_sample_stride : 0;
    const ScenarioOutcome outcome = run_scenario(run.scenario, o);
    write_outputs(run, outcome);
    const double rejected = outcome.report.counts.rejection_fraction();
    if (rejected >= kRejectionBudget) {
      std::cerr << "rejection budget exceeded: " << rejected << " of trajectories hit a node\n";
      return exit_code::runtime_rejection;
    }
    return exit_code::ok;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::config_error;
  } catch (const ConstraintViolatedError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::config_error;
  } catch (const ConditioningStarvedError& e) {
    std::cerr << "conditioning starved: " << e.what() << '\n';
    return exit_code::runtime_rejection;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
}

}  // namespace twoslit
