#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twoslit/errors.hpp"
#include "twoslit/guidance.hpp"
#include "twoslit/wavefunction.hpp"

using namespace twoslit;

namespace {

PhysicalParams slits(double Y, double ky = 0.0) {
  PhysicalParams p;
  p.slit_offset = Y;
  p.kx = 10.0;
  p.ky = ky;
  return p;
}

}  // namespace

TEST_CASE("velocities vanish on the symmetry axis") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> y(-5.0, 5.0), t(0.0, 20.0);
  for (double Y : {0.01, 0.1, 1.0, 3.0}) {
    const PhysicalParams p = slits(Y);
    for (int i = 0; i < 500; ++i) {
      const double other = y(rng), ti = t(rng);
      CHECK(std::abs(velocity(p, {0.0, other, ti}).v1) <= 1e-12);
      CHECK(std::abs(velocity(p, {other, 0.0, ti}).v2) <= 1e-12);
    }
  }
}

TEST_CASE("velocity field is odd under reflection and covariant under exchange") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> y(-6.0, 6.0), t(0.0, 10.0);
  const PhysicalParams p = slits(0.4);
  for (int i = 0; i < 1000; ++i) {
    const PairState s{y(rng), y(rng), t(rng)};
    const VelocityPair v = velocity(p, s);
    const VelocityPair r = velocity(p, {-s.y1, -s.y2, s.t});
    const VelocityPair x = velocity(p, {s.y2, s.y1, s.t});
    const double scale = 1.0 + std::abs(v.v1) + std::abs(v.v2);
    CHECK(std::abs(v.v1 + r.v1) <= 1e-12 * scale);
    CHECK(std::abs(v.v2 + r.v2) <= 1e-12 * scale);
    CHECK(std::abs(v.v1 - x.v2) <= 1e-12 * scale);
    CHECK(std::abs(v.v2 - x.v1) <= 1e-12 * scale);
  }
}

TEST_CASE("analytic velocity equals the phase gradient") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> y(-4.0, 4.0), t(0.05, 5.0);
  for (double ky : {0.0, 0.8}) {
    const PhysicalParams p = slits(1.2, ky);
    const oracle::Setup s{1.0, 1.0, 1.0, p.slit_offset, p.kx, p.ky, {1.0, 0.0}};
    int checked = 0;
    while (checked < 1000) {
      const PairState st{y(rng), y(rng), t(rng)};
      // Stay away from nodes, where the phase is ill-conditioned.
      if (std::abs(psi_total(p, 0, st.y1, 0, st.y2, st.t)) < 1e-3) continue;
      ++checked;
      const VelocityPair v = velocity(p, st);
      const double fd1 = oracle::phase_velocity(s, st.y1, st.y2, st.t, 1e-5);
      const double fd2 = oracle::phase_velocity(s, st.y2, st.y1, st.t, 1e-5);
      CHECK(std::abs(v.v1 - fd1) <= 1e-6 * std::max(1.0, std::abs(fd1)));
      CHECK(std::abs(v.v2 - fd2) <= 1e-6 * std::max(1.0, std::abs(fd2)));
    }
  }
}

TEST_CASE("each velocity depends on its own coordinate only") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> y(-5.0, 5.0), t(0.0, 10.0);
  const PhysicalParams p = slits(0.7, 0.2);
  for (int i = 0; i < 500; ++i) {
    const double y1 = y(rng), ti = t(rng);
    const double a = velocity(p, {y1, y(rng), ti}).v1;
    const double b = velocity(p, {y1, y(rng), ti}).v1;
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("center-of-mass velocity decomposition") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> y(-4.0, 4.0), t(0.0, 10.0);
  SUBCASE("leading term plus residual reproduce the full velocity") {
    for (double ky : {0.0, -0.6}) {
      const PhysicalParams p = slits(0.9, ky);
      for (int i = 0; i < 1000; ++i) {
        const PairState s{y(rng), y(rng), t(rng)};
        const double full = velocity_com(p, s);
        CHECK(velocity_com_terms(p, s).total() ==
              doctest::Approx(full).epsilon(1e-10).scale(1.0));
      }
    }
  }
  SUBCASE("the residual is negligible for nearly coincident slits") {
    const PhysicalParams p = slits(0.01);
    for (int i = 0; i < 1000; ++i) {
      const PairState s{y(rng), y(rng), t(rng)};
      CHECK(std::abs(velocity_com_terms(p, s).residual) <= 1e-3);
    }
  }
  SUBCASE("the leading term alone is within one percent") {
    const PhysicalParams p = slits(0.01);
    for (int i = 0; i < 1000; ++i) {
      PairState s{y(rng), y(rng), t(rng) + 0.5};
      if (std::abs(s.y1 + s.y2) < 0.5) continue;
      const ComVelocityTerms terms = velocity_com_terms(p, s);
      CHECK(terms.leading == doctest::Approx(terms.total()).epsilon(0.01));
    }
  }
}

TEST_CASE("free-spreading center-of-mass path") {
  PhysicalParams p;  // s = 1/2
  CHECK(com_closed_form(p, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(com_closed_form(p, 1.0, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(com_closed_form(p, -3.0, 20.0) == doctest::Approx(-3.0 * std::sqrt(101.0)));
}

TEST_CASE("nodes are reported rather than producing nonsense") {
  // Real positions rarely hit an exact zero of psi; a vanishing amplitude
  // puts every point on a node.
  PhysicalParams p = slits(1.0);
  p.amplitude = {0.0, 0.0};
  CHECK_FALSE(try_velocity(p, {0.3, 0.4, 1.0}).has_value());
  CHECK_THROWS_AS(velocity(p, {0.3, 0.4, 1.0}), NodeProximityError);
  CHECK_THROWS_AS(velocity_com_terms(p, {0.3, 0.4, 1.0}), NodeProximityError);
}
