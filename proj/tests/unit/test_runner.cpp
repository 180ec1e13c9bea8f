#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twoslit/config.hpp"
#include "twoslit/errors.hpp"
#include "twoslit/runner.hpp"

using namespace twoslit;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({"case": "symmetric_3_1", "sigma0": 1.0, "Y": 0.1, "kx": 10.0,
                           "D": 20.0, "seed": 42})";

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("twoslit_runner_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("minimal configuration") {
  const RunConfig run = parse_config(kMinimal);
  const ScenarioConfig& sc = run.scenario;
  CHECK(sc.kind == ScenarioCase::symmetric);
  CHECK(sc.params.slit_offset == 0.1);
  CHECK(sc.params.hbar == 1.0);
  CHECK(sc.target_st == doctest::Approx(1.0));  // s D / u_x = 0.5 * 20 / 10
  CHECK(sc.screen.distance_D == 20.0);
  CHECK(sc.screen.is_mirror_symmetric());
  CHECK(sc.sampler.n_pairs == 100000);
  CHECK(sc.sampler.seed == 42);
  CHECK(std::holds_alternative<NoConditioning>(sc.sampler.conditioning));
  CHECK(sc.integ.method == IntegratorMethod::rk45_adaptive);
  CHECK_FALSE(run.emit_trajectories);

  const RunConfig again = parse_config(config_to_json(run));
  CHECK(config_to_json(again) == config_to_json(run));
}

TEST_CASE("configuration errors name the offending field") {
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": -1, "Y": 0.1, "kx": 10, "D": 20})") ==
        "sigma0");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 1.0, "kx": 10, "D": 20})") == "Y");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 0.1, "kx": 10, "D": 100})") == "D");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 0.1, "kx": 10, "D": 20,
                     "target_st": 2})") == "target_st");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 0.1, "kx": 10, "D": 20,
                     "colour": 1})") == "colour");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 0.1, "kx": 10, "D": 20,
                     "integrator": {"tol": 0}})") == "integrator.tol");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 0.1, "kx": 10, "D": 20,
                     "n_pairs": -5})") == "n_pairs");
  CHECK(field_of(R"({"case": "selective_3_2", "sigma0": 1, "Y": 0.1, "kx": 10, "target_st": 10,
                     "conditioning": {"type": "com_offset", "mean": 1.0}})") ==
        "conditioning.mean");
  CHECK(field_of(R"({"case": "sideways", "sigma0": 1, "kx": 10, "D": 20})") == "case");
  CHECK(field_of("{not json") == "<document>");
  CHECK(field_of(R"({"case": "symmetric_3_1", "sigma0": 1, "Y": 0.1, "kx": 10, "target_st": 1})") ==
        "<accepted>");
}

TEST_CASE("selective defaults") {
  const RunConfig run = parse_config(
      R"({"case": "selective_3_2", "sigma0": 1, "Y": 0.1, "kx": 10, "target_st": 10})");
  const auto* w = std::get_if<ComOffset>(&run.scenario.sampler.conditioning);
  REQUIRE(w != nullptr);
  CHECK(w->mean == 3.0);
  CHECK(w->width == 0.5);
  CHECK(w->opposite_sides);
  CHECK(run.scenario.run_control);
  CHECK(run.scenario.screen.distance_D == doctest::Approx(200.0));
}

TEST_CASE("execute writes deterministic outputs") {
  RunConfig run = parse_config(kMinimal);
  run.scenario.sampler.n_pairs = 2000;
  run.output_dir = scratch("a");
  const auto start = std::chrono::steady_clock::now();
  REQUIRE(execute(run) == exit_code::ok);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 5.0);

  const fs::path a = run.output_dir;
  for (const char* f : {"summary.json", "marginal_hist.csv", "com_hist.csv", "sqm_marginal.csv"})
    CHECK(fs::exists(a / f));
  CHECK_FALSE(fs::exists(a / "trajectories.csv"));
  const std::size_t bins = run.scenario.screen.n_bins;
  CHECK(lines(a / "marginal_hist.csv") == bins + 1);
  CHECK(lines(a / "com_hist.csv") == bins + 1);
  CHECK(lines(a / "sqm_marginal.csv") == bins + 1);

  run.output_dir = scratch("b");
  REQUIRE(execute(run, {3, 0}) == exit_code::ok);
  auto sa = nlohmann::json::parse(slurp(a / "summary.json"));
  auto sb = nlohmann::json::parse(slurp(run.output_dir / "summary.json"));
  CHECK(sa["seed"] == 42);
  CHECK(sa["report"]["n_completed"] == 2000);
  sa.erase("timestamp");
  sb.erase("timestamp");
  sa["config"].erase("output_dir");
  sb["config"].erase("output_dir");
  CHECK(sa.dump() == sb.dump());
  CHECK(slurp(a / "marginal_hist.csv") == slurp(run.output_dir / "marginal_hist.csv"));
}

TEST_CASE("trajectory output is opt-in") {
  RunConfig run = parse_config(kMinimal);
  run.scenario.sampler.n_pairs = 5;
  run.output_dir = scratch("traj");
  run.emit_trajectories = true;
  run.trajectory_sample_stride = 2;
  REQUIRE(execute(run) == exit_code::ok);
  const fs::path traj = run.output_dir / "trajectories.csv";
  REQUIRE(fs::exists(traj));
  CHECK(lines(traj) > 5 * 2);
  std::ifstream in(traj);
  std::string header;
  std::getline(in, header);
  CHECK(header == "pair,t,y1,y2");

  run.emit_trajectories = false;
  REQUIRE(execute(run) == exit_code::ok);
  CHECK_FALSE(fs::exists(traj));
}

TEST_CASE("starved conditioning maps to a runtime rejection") {
  RunConfig run = parse_config(
      R"({"case": "selective_3_2", "sigma0": 1, "Y": 0.1, "kx": 10, "target_st": 10,
          "n_pairs": 10, "conditioning": {"type": "com_offset", "mean": 60, "width": 0.5}})");
  run.output_dir = scratch("starved");
  CHECK(execute(run) == exit_code::runtime_rejection);
}
