#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "oracles.hpp"
#include "twoslit/errors.hpp"
#include "twoslit/sampler.hpp"
#include "twoslit/wavefunction.hpp"

using namespace twoslit;

namespace {

PhysicalParams slits(double Y) {
  PhysicalParams p;
  p.slit_offset = Y;
  p.kx = 10.0;
  return p;
}

double normal_cdf(double x, double sd) { return 0.5 * std::erfc(-x / (sd * std::numbers::sqrt2)); }

SamplerConfig config(std::size_t n, Conditioning c, std::uint64_t seed = 1) {
  SamplerConfig s;
  s.n_pairs = n;
  s.seed = seed;
  s.conditioning = c;
  return s;
}

}  // namespace

TEST_CASE("pair streams depend only on seed and index") {
  auto a = pair_stream(9, 4), b = pair_stream(9, 4), c = pair_stream(9, 5), d = pair_stream(10, 4);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(a);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("one-particle table reproduces the initial density") {
  const PhysicalParams p = slits(0.8);
  const OneParticleTable table(p);
  const auto s = oracle::Setup{1, 1, 1, 0.8, 10.0, 0.0, {1.0, 0.0}};
  auto rho = [&](double y) {
    return std::norm(oracle::packet(s, 1, 0, y, 0) + oracle::packet(s, -1, 0, y, 0)) /
           (2.0 * (1.0 + std::exp(-0.32)));
  };
  for (double y : {-3.0, -0.8, 0.0, 0.4, 2.5}) {
    CAPTURE(y);
    CHECK(std::abs(table.cdf(y) - oracle::simpson(rho, -20.0, y, 4000)) < 1e-6);  // linear interpolation within a cell
    CHECK(table.cdf(y) + table.survival(y) == doctest::Approx(1.0));
  }
  CHECK(std::abs(table.mass(-1.0, 1.0) - oracle::simpson(rho, -1.0, 1.0, 2000)) < 1e-6);  // linear interpolation within a cell
  // Far tail keeps relative precision.
  CHECK(table.survival(8.0) == doctest::Approx(oracle::simpson(rho, 8.0, 20.0, 4000)).epsilon(1e-6));
  for (double u : {0.0, 0.25, 0.5, 0.999}) {
    const double y = table.sample_between(-1.0, 2.0, u);
    CHECK(y >= -1.0);
    CHECK(y < 2.0);
    CHECK(table.mass(-1.0, y) / table.mass(-1.0, 2.0) == doctest::Approx(u).epsilon(1e-9));
  }
}

TEST_CASE("unconditioned draws follow the marginal") {
  // Coincident slits make the initial marginal a unit normal: exact oracle.
  const PhysicalParams p = slits(0.0);
  const auto pairs = sample_initial_positions(p, config(20000, NoConditioning{}));
  REQUIRE(pairs.size() == 20000);
  std::vector<double> y1, y2;
  double sum = 0.0;
  for (const auto& s : pairs) {
    y1.push_back(s.y1);
    y2.push_back(s.y2);
    sum += s.y1;
    CHECK(s.t == 0.0);
  }
  const double n = static_cast<double>(pairs.size());
  CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
  std::sort(y1.begin(), y1.end());
  std::sort(y2.begin(), y2.end());
  CHECK(oracle::ks_p_value(y1, [](double y) { return normal_cdf(y, 1.0); }) > 0.01);
  CHECK(oracle::ks_p_value(y2, [](double y) { return normal_cdf(y, 1.0); }) > 0.01);
}

TEST_CASE("opposite-slit conditioning") {
  const PhysicalParams p = slits(0.1);
  const auto pairs = sample_initial_positions(p, config(5000, OppositeSlits{}));
  std::size_t upper = 0;
  for (const auto& s : pairs) {
    CHECK(s.y1 * s.y2 < 0.0);
    upper += s.y1 > 0.0;
  }
  CHECK(std::abs(static_cast<double>(upper) / 5000.0 - 0.5) < 4.0 * 0.5 / std::sqrt(5000.0));
  CHECK(PairSampler(p, OppositeSlits{}).equilibrium_mass() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("center-of-mass window draws the exact conditional law") {
  // With Y = 0, y1 + y2 ~ N(0, 2) and y1 - y2 ~ N(0, 2) independently.
  const PhysicalParams p = slits(0.0);
  const ComOffset w{0.8, 0.6, false};
  const PairSampler sampler(p, w);
  const double sd = 1.0 / std::numbers::sqrt2;  // of (y1 + y2) / 2
  const double lo = w.mean - 0.5 * w.width, hi = w.mean + 0.5 * w.width;
  const double window_mass = normal_cdf(hi, sd) - normal_cdf(lo, sd);
  CHECK(sampler.equilibrium_mass() == doctest::Approx(window_mass).epsilon(1e-6));

  const auto pairs = sample_initial_positions(p, config(20000, w, 3));
  std::vector<double> com, diff;
  for (const auto& s : pairs) {
    com.push_back(0.5 * (s.y1 + s.y2));
    diff.push_back(s.y1 - s.y2);
  }
  CHECK(*std::min_element(com.begin(), com.end()) >= lo);
  CHECK(*std::max_element(com.begin(), com.end()) <= hi);
  std::sort(com.begin(), com.end());
  std::sort(diff.begin(), diff.end());
  const double c_lo = normal_cdf(lo, sd);
  CHECK(oracle::ks_p_value(com, [&](double x) { return (normal_cdf(x, sd) - c_lo) / window_mass; }) >
        0.01);
  CHECK(oracle::ks_p_value(diff, [](double x) { return normal_cdf(x, std::numbers::sqrt2); }) > 0.01);
}

TEST_CASE("selective window with opposite sides") {
  const PhysicalParams p = slits(0.1);
  const ComOffset w{3.0, 0.5, true};
  const auto pairs = sample_initial_positions(p, config(5000, w, 5));
  std::size_t first_upper = 0;
  for (const auto& s : pairs) {
    const double c = 0.5 * (s.y1 + s.y2);
    CHECK(c >= 2.75);
    CHECK(c <= 3.25);
    CHECK(s.y1 * s.y2 < 0.0);
    first_upper += s.y1 > 0.0;
  }
  // Exchange symmetry: either particle is equally likely to be the upper one.
  CHECK(std::abs(static_cast<double>(first_upper) / 5000.0 - 0.5) < 0.03);
  const double mass = PairSampler(p, w).equilibrium_mass();
  CHECK(mass > 0.0);
  CHECK(mass < 1e-6);
}

TEST_CASE("impossible windows and bad sizes are rejected") {
  const PhysicalParams p = slits(0.1);
  CHECK_THROWS_AS(PairSampler(p, ComOffset{60.0, 0.5, true}), ConditioningStarvedError);
  CHECK_THROWS_AS(sample_initial_positions(p, config(0, NoConditioning{})), InvalidArgumentError);
  CHECK_THROWS_AS(sample_initial_positions(p, config(10, ComOffset{1.0, 0.0, false})),
                  InvalidArgumentError);
}
