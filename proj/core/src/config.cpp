#include "twoslit/config.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include <json.hpp>

#include "twoslit/errors.hpp"
#include "twoslit/wavefunction.hpp"

namespace twoslit {

namespace {

using json = nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& prefix,
                    std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!keys.contains(key)) throw ConfigError(join(prefix, key), "unknown key");
}

double number(const json& obj, const std::string& prefix, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(prefix, key), "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join(prefix, key), "must be finite");
  return d;
}

double positive(const json& obj, const std::string& prefix, const char* key, double fallback) {
  const double d = number(obj, prefix, key, fallback);
  if (!(d > 0.0)) throw ConfigError(join(prefix, key), "must be > 0");
  return d;
}

bool boolean(const json& obj, const std::string& prefix, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError(join(prefix, key), "must be true or false");
  return obj.at(key).get<bool>();
}

std::uint64_t count(const json& obj, const std::string& prefix, const char* key,
                    std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(join(prefix, key), "must be non-negative");
  throw ConfigError(join(prefix, key), "must be a non-negative integer");
}

Complex amplitude(const json& obj) {
  if (!obj.contains("amplitude")) return {1.0, 0.0};
  const json& v = obj.at("amplitude");
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("amplitude", "must be a number or [re, im]");
}

Conditioning conditioning(const json& root, ScenarioCase kind, double sigma0) {
  if (!root.contains("conditioning")) {
    if (kind == ScenarioCase::selective) return ComOffset{3.0 * sigma0, 0.5 * sigma0, true};
    return NoConditioning{};
  }
  const json& c = root.at("conditioning");
  if (!c.is_object()) throw ConfigError("conditioning", "must be an object");
  const std::string type = c.value("type", std::string("none"));
  if (type == "none") {
    reject_unknown(c, "conditioning", {"type"});
    return NoConditioning{};
  }
  if (type == "opposite_slits") {
    reject_unknown(c, "conditioning", {"type"});
    return OppositeSlits{};
  }
  if (type == "com_offset") {
    reject_unknown(c, "conditioning", {"type", "mean", "width", "opposite_sides"});
    ComOffset w;
    w.mean = number(c, "conditioning", "mean", 3.0 * sigma0);
    w.width = positive(c, "conditioning", "width", 0.5 * sigma0);
    w.opposite_sides =
        boolean(c, "conditioning", "opposite_sides", kind == ScenarioCase::selective);
    return w;
  }
  throw ConfigError("conditioning.type", "must be none, opposite_slits or com_offset");
}

IntegratorConfig integrator(const json& root) {
  IntegratorConfig cfg;
  if (!root.contains("integrator")) return cfg;
  const json& j = root.at("integrator");
  if (!j.is_object()) throw ConfigError("integrator", "must be an object");
  reject_unknown(j, "integrator", {"method", "dt_initial", "tol", "max_steps", "max_node_halvings"});
  if (j.contains("method")) {
    const json& m = j.at("method");
    if (m == "rk45_adaptive")
      cfg.method = IntegratorMethod::rk45_adaptive;
    else if (m == "rk4_fixed")
      cfg.method = IntegratorMethod::rk4_fixed;
    else
      throw ConfigError("integrator.method", "must be rk45_adaptive or rk4_fixed");
  }
  cfg.dt_initial = positive(j, "integrator", "dt_initial", cfg.dt_initial);
  cfg.tol = positive(j, "integrator", "tol", cfg.tol);
  cfg.max_steps = count(j, "integrator", "max_steps", cfg.max_steps);
  if (cfg.max_steps < 1) throw ConfigError("integrator.max_steps", "must be >= 1");
  cfg.max_node_halvings = count(j, "integrator", "max_node_halvings", cfg.max_node_halvings);
  return cfg;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("<document>", "top level must be an object");
  reject_unknown(root, "",
                 {"case", "hbar", "mass", "sigma0", "Y", "kx", "ky", "amplitude", "D", "target_st",
                  "bin_delta", "screen_half_width", "n_pairs", "seed", "conditioning",
                  "integrator", "control_run", "output_dir", "emit_trajectories",
                  "trajectory_sample_stride"});

  RunConfig run;
  ScenarioConfig& sc = run.scenario;

  if (!root.contains("case")) throw ConfigError("case", "required");
  if (!root.at("case").is_string()) throw ConfigError("case", "must be a string");
  const auto kind = scenario_case_from_string(root.at("case").get<std::string>());
  if (!kind) throw ConfigError("case", "must be symmetric_3_1 or selective_3_2");
  sc.kind = *kind;

  PhysicalParams& p = sc.params;
  p.hbar = positive(root, "", "hbar", 1.0);
  p.mass = positive(root, "", "mass", 1.0);
  if (!root.contains("sigma0")) throw ConfigError("sigma0", "required");
  p.sigma0 = positive(root, "", "sigma0", 1.0);
  p.slit_offset = number(root, "", "Y", 0.0);
  if (p.slit_offset < 0.0) throw ConfigError("Y", "must be >= 0");
  if (!root.contains("kx")) throw ConfigError("kx", "required");
  p.kx = positive(root, "", "kx", 1.0);
  p.ky = number(root, "", "ky", 0.0);
  p.amplitude = amplitude(root);

  const double s = p.spreading_rate();
  const bool has_D = root.contains("D");
  const bool has_st = root.contains("target_st");
  if (!has_D && !has_st) throw ConfigError("D", "either D or target_st is required");
  double D = has_D ? positive(root, "", "D", 1.0) : 0.0;
  if (has_st) {
    sc.target_st = positive(root, "", "target_st", 1.0);
    const double derived_D = p.ux() * sc.target_st / s;
    if (has_D && std::abs(D - derived_D) > 1e-9 * derived_D)
      throw ConfigError("target_st", "inconsistent with D: s*D/u_x = " + std::to_string(s * D / p.ux()));
    if (!has_D) D = derived_D;
  } else {
    sc.target_st = s * D / p.ux();
  }

  if (sc.kind == ScenarioCase::symmetric) {
    if (p.slit_offset > kMuchLessThan * p.sigma0 * (1.0 + 1e-12))
      throw ConfigError("Y", "symmetric_3_1 requires Y <= 0.1*sigma0");
    if (sc.target_st < 0.5 || sc.target_st > 2.0)
      throw ConfigError(has_st ? "target_st" : "D", "symmetric_3_1 requires s*T in [0.5, 2]");
  } else if (sc.target_st < 10.0) {
    throw ConfigError(has_st ? "target_st" : "D", "selective_3_2 requires s*T >= 10");
  }

  sc.sampler.n_pairs = count(root, "", "n_pairs", 100000);
  if (sc.sampler.n_pairs < 1) throw ConfigError("n_pairs", "must be >= 1");
  sc.sampler.seed = count(root, "", "seed", 0);
  sc.sampler.conditioning = conditioning(root, sc.kind, p.sigma0);
  if (sc.kind == ScenarioCase::selective) {
    const auto* w = std::get_if<ComOffset>(&sc.sampler.conditioning);
    if (w == nullptr) throw ConfigError("conditioning.type", "selective_3_2 requires com_offset");
    if (w->mean < 3.0 * p.sigma0 * (1.0 - 1e-12))
      throw ConfigError("conditioning.mean", "selective_3_2 requires mean >= 3*sigma0");
  }
  sc.integ = integrator(root);
  sc.run_control = boolean(root, "", "control_run", true);

  // Screen: default detectors |sigma_T|/4 wide over 8|sigma_T| plus the
  // spread-out conditioning offset.
  const double T = D / p.ux();
  const double width_T = std::abs(sigma_t(p, T));
  const double bin = positive(root, "", "bin_delta", 0.25 * width_T);
  double reach = 8.0 * width_T;
  if (const auto* w = std::get_if<ComOffset>(&sc.sampler.conditioning))
    reach += 2.0 * (std::abs(w->mean) + 0.5 * w->width) * std::sqrt(1.0 + s * s * T * T);
  reach = positive(root, "", "screen_half_width", reach);
  sc.screen = ScreenConfig::symmetric(D, bin, reach);

  if (root.contains("output_dir")) {
    if (!root.at("output_dir").is_string()) throw ConfigError("output_dir", "must be a string");
    run.output_dir = root.at("output_dir").get<std::string>();
  }
  run.emit_trajectories = boolean(root, "", "emit_trajectories", false);
  run.trajectory_sample_stride = count(root, "", "trajectory_sample_stride", 1);
  if (run.trajectory_sample_stride < 1)
    throw ConfigError("trajectory_sample_stride", "must be >= 1");

  try {
    validate_scenario(sc);
  } catch (const Error& e) {
    throw ConfigError("case", e.what());
  }
  return run;
}

std::string config_to_json(const RunConfig& run) {
  const ScenarioConfig& sc = run.scenario;
  const PhysicalParams& p = sc.params;
  json j;
  j["case"] = to_string(sc.kind);
  j["hbar"] = p.hbar;
  j["mass"] = p.mass;
  j["sigma0"] = p.sigma0;
  j["Y"] = p.slit_offset;
  j["kx"] = p.kx;
  j["ky"] = p.ky;
  j["amplitude"] = json::array({p.amplitude.real(), p.amplitude.imag()});
  j["D"] = sc.screen.distance_D;
  j["target_st"] = sc.target_st;
  j["bin_delta"] = sc.screen.bin_delta;
  j["screen_half_width"] = sc.screen.y_max;
  j["n_pairs"] = sc.sampler.n_pairs;
  j["seed"] = sc.sampler.seed;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NoConditioning>)
          j["conditioning"] = {{"type", "none"}};
        else if constexpr (std::is_same_v<T, OppositeSlits>)
          j["conditioning"] = {{"type", "opposite_slits"}};
        else
          j["conditioning"] = {{"type", "com_offset"},
                               {"mean", c.mean},
                               {"width", c.width},
                               {"opposite_sides", c.opposite_sides}};
      },
      sc.sampler.conditioning);
  j["integrator"] = {
      {"method", sc.integ.method == IntegratorMethod::rk45_adaptive ? "rk45_adaptive" : "rk4_fixed"},
      {"dt_initial", sc.integ.dt_initial},
      {"tol", sc.integ.tol},
      {"max_steps", sc.integ.max_steps},
      {"max_node_halvings", sc.integ.max_node_halvings}};
  j["control_run"] = sc.run_control;
  j["output_dir"] = run.output_dir.string();
  j["emit_trajectories"] = run.emit_trajectories;
  j["trajectory_sample_stride"] = run.trajectory_sample_stride;
  return j.dump(2);
}

}  // namespace twoslit
