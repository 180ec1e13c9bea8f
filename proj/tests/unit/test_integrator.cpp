#include <doctest.h>

#include <random>

#include "twoslit/errors.hpp"
#include "twoslit/guidance.hpp"
#include "twoslit/integrator.hpp"

using namespace twoslit;

namespace {

PhysicalParams slits(double Y) {
  PhysicalParams p;
  p.slit_offset = Y;
  p.kx = 10.0;
  return p;
}

IntegratorConfig rk4(double dt) {
  IntegratorConfig c;
  c.method = IntegratorMethod::rk4_fixed;
  c.dt_initial = dt;
  return c;
}

}  // namespace

TEST_CASE("a particle on the axis stays there") {
  const PhysicalParams p = slits(0.3);
  for (const IntegratorConfig& cfg : {IntegratorConfig{}, rk4(0.01)}) {
    const Trajectory tr = integrate_trajectory(p, {0.0, 1.3, 0.0}, 5.0, cfg);
    CHECK(tr.status == TrajectoryStatus::completed);
    CHECK(std::abs(tr.terminal.y1) <= 1e-10);
    CHECK(tr.terminal.t == 5.0);
  }
}

TEST_CASE("coincident slits give pure free spreading") {
  // With Y = 0 each particle rides y0 sqrt(1 + s^2 t^2) exactly.
  const PhysicalParams p = slits(0.0);
  for (double y0 : {-2.0, 0.1, 1.5})
    for (double T : {1.0, 4.0, 20.0}) {
      CAPTURE(y0);
      CAPTURE(T);
      const Trajectory a = integrate_trajectory(p, {y0, -0.5 * y0, 0.0}, T, IntegratorConfig{});
      CHECK(a.terminal.y1 == doctest::Approx(com_closed_form(p, y0, T)).epsilon(1e-7));
      CHECK(a.terminal.y2 == doctest::Approx(com_closed_form(p, -0.5 * y0, T)).epsilon(1e-7));
      const Trajectory b = integrate_trajectory(p, {y0, -0.5 * y0, 0.0}, T, rk4(0.01));
      CHECK(b.terminal.y1 == doctest::Approx(com_closed_form(p, y0, T)).epsilon(1e-8));
    }
}

TEST_CASE("fixed-step results converge under step halving") {
  const PhysicalParams p = slits(0.8);
  const PairState start{0.4, -1.1, 0.0};
  const Trajectory coarse = integrate_trajectory(p, start, 3.0, rk4(0.02));
  const Trajectory fine = integrate_trajectory(p, start, 3.0, rk4(0.01));
  CHECK(std::abs(coarse.terminal.y1 - fine.terminal.y1) <= 1e-6);
  CHECK(std::abs(coarse.terminal.y2 - fine.terminal.y2) <= 1e-6);
  const Trajectory adaptive = integrate_trajectory(p, start, 3.0, IntegratorConfig{});
  CHECK(std::abs(adaptive.terminal.y1 - fine.terminal.y1) <= 1e-6);
  CHECK(std::abs(adaptive.terminal.y2 - fine.terminal.y2) <= 1e-6);
}

TEST_CASE("sampling keeps the endpoints and orders the samples") {
  const PhysicalParams p = slits(0.1);
  const Trajectory tr = integrate_trajectory(p, {0.7, -0.2, 0.0}, 2.0, rk4(0.1), 3);
  REQUIRE(tr.samples.size() >= 3);
  CHECK(tr.samples.front().t == 0.0);
  CHECK(tr.samples.back().t == doctest::Approx(2.0));
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);
  CHECK(tr.steps == 20);
  CHECK(integrate_trajectory(p, {0.7, -0.2, 0.0}, 2.0, rk4(0.1)).samples.empty());
}

TEST_CASE("no trajectory crosses the axis") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> y(0.0, 1.0);
  for (double Y : {0.1, 1.0, 2.0}) {
    const PhysicalParams p = slits(Y);
    for (int i = 0; i < 100; ++i) {
      const PairState s{y(rng) + Y, y(rng) - Y, 0.0};
      const Trajectory tr = integrate_trajectory(p, s, 10.0, IntegratorConfig{});
      REQUIRE(tr.status == TrajectoryStatus::completed);
      CHECK(tr.axis_crossings == 0);
      CHECK(tr.terminal.y1 * s.y1 > 0.0);
      CHECK(tr.terminal.y2 * s.y2 > 0.0);
    }
  }
}

TEST_CASE("trajectories through a node are rejected, not thrown") {
  PhysicalParams p = slits(0.5);
  p.amplitude = {0.0, 0.0};
  const Trajectory tr = integrate_trajectory(p, {0.2, 0.3, 0.0}, 1.0, IntegratorConfig{});
  CHECK(tr.status == TrajectoryStatus::rejected_node);
  const Trajectory fixed = integrate_trajectory(p, {0.2, 0.3, 0.0}, 1.0, rk4(0.1));
  CHECK(fixed.status == TrajectoryStatus::rejected_node);
}

TEST_CASE("integrator configuration validation") {
  const PhysicalParams p = slits(0.1);
  IntegratorConfig c;
  c.tol = 0.0;
  CHECK_THROWS_AS(integrate_trajectory(p, {0.1, 0.2, 0.0}, 1.0, c), InvalidArgumentError);
  CHECK_THROWS_AS(integrate_trajectory(p, {0.1, 0.2, 0.5}, 1.0, IntegratorConfig{}),
                  InvalidArgumentError);
  CHECK_THROWS_AS(integrate_trajectory(p, {0.1, 0.2, 0.0}, 0.0, IntegratorConfig{}),
                  InvalidArgumentError);
  IntegratorConfig tight = rk4(1e-3);
  tight.max_steps = 10;
  CHECK_THROWS_AS(integrate_trajectory(p, {0.1, 0.2, 0.0}, 1.0, tight), InvalidArgumentError);
}

TEST_CASE("roundoff on the axis is not a crossing") {
  // Starting exactly on the axis leaves only roundoff-sized motion there.
  const PhysicalParams p = slits(0.01);
  const Trajectory tr = integrate_trajectory(p, {1.0, 0.0, 0.0}, 4.0, IntegratorConfig{}, 1);
  REQUIRE(tr.status == TrajectoryStatus::completed);
  CHECK(std::abs(tr.terminal.y2) <= kAxisBand);
  CHECK(tr.axis_crossings == 0);
}
