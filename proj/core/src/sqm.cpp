#include "twoslit/sqm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "twoslit/errors.hpp"
#include "twoslit/quadrature.hpp"
#include "twoslit/wavefunction.hpp"

namespace twoslit {

ScreenConfig ScreenConfig::symmetric(double distance_D, double bin_delta, double half_extent) {
  if (!(bin_delta > 0.0)) throw InvalidArgumentError("bin_delta must be > 0");
  if (!(half_extent > 0.0)) throw InvalidArgumentError("screen half extent must be > 0");
  const auto half = static_cast<std::size_t>(std::ceil(half_extent / bin_delta - 1e-12));
  ScreenConfig s;
  s.distance_D = distance_D;
  s.bin_delta = bin_delta;
  s.n_bins = 2 * half;
  s.y_min = -static_cast<double>(half) * bin_delta;
  s.y_max = static_cast<double>(half) * bin_delta;
  return s;
}

void ScreenConfig::validate(const PhysicalParams& p) const {
  if (!(bin_delta > 0.0)) throw InvalidArgumentError("bin_delta must be > 0");
  if (!(y_min < y_max)) throw InvalidArgumentError("y_min must be < y_max");
  if (n_bins < 1) throw InvalidArgumentError("n_bins must be >= 1");
  const double end = y_min + static_cast<double>(n_bins) * bin_delta;
  if (std::abs(end - y_max) > 1e-9 * std::max(1.0, std::abs(y_max)))
    throw InvalidArgumentError("y_min + n_bins * bin_delta must equal y_max");
  if (!(distance_D > 0.0)) throw InvalidArgumentError("screen distance must be > 0");
  if (!(p.ux() > 0.0)) throw InvalidArgumentError("screen time D/u_x requires u_x > 0");
}

bool ScreenConfig::is_mirror_symmetric() const noexcept {
  return std::abs(y_min + y_max) <= 1e-9 * (std::abs(y_max) + bin_delta);
}

double screen_time(const PhysicalParams& p, const ScreenConfig& screen) {
  return screen.distance_D / p.ux();
}

double joint_density(const PhysicalParams& p, double y1, double y2, double t) {
  return std::norm(psi_total(p, 0.0, y1, 0.0, y2, t));
}

double joint_probability(const PhysicalParams& p, double y1_lo, double y1_hi, double y2_lo,
                         double y2_hi, double t) {
  return quad::integrate_2d([&](double y1, double y2) { return joint_density(p, y1, y2, t); },
                            y1_lo, y1_hi, y2_lo, y2_hi);
}

double joint_detection_probability(const PhysicalParams& p, const ScreenConfig& screen, double Q1,
                                   double Q2) {
  const double T = screen_time(p, screen);
  const double d = screen.bin_delta;
  return joint_probability(p, Q1, Q1 + d, Q2, Q2 + d, T);
}

double BinnedCurve::total() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double JointDensityGrid::total() const noexcept {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double marginal_mass(const PhysicalParams& p, double lo, double hi, double t) {
  return quad::integrate([&](double y) { return one_particle_density(p, y, t); }, lo, hi);
}

BinnedCurve marginal_density(const PhysicalParams& p, double t, double y_min, double y_max,
                             std::size_t n_bins) {
  if (!(y_min < y_max) || n_bins == 0) throw InvalidArgumentError("empty marginal grid");
  BinnedCurve c;
  c.y_min = y_min;
  c.bin_width = (y_max - y_min) / static_cast<double>(n_bins);
  c.values.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) c.values[i] = marginal_mass(p, c.bin_lo(i), c.bin_hi(i), t);
  return c;
}

BinnedCurve marginal_density(const PhysicalParams& p, double t, const ScreenConfig& screen) {
  return marginal_density(p, t, screen.y_min, screen.y_max, screen.n_bins);
}

JointDensityGrid joint_density_grid(const PhysicalParams& p, const ScreenConfig& screen, double t) {
  // Factorized route: mass(i, j) = m_i m_j / (N^2 norm1^2).
  const BinnedCurve m = marginal_density(p, t, screen);
  const double n = normalization_N(p);
  const double norm1 = one_particle_norm(p);
  const double scale = 1.0 / (n * n * norm1 * norm1);

  JointDensityGrid g;
  g.n = screen.n_bins;
  g.y_min = screen.y_min;
  g.bin_width = screen.bin_delta;
  g.values.resize(g.n * g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) g.values[i * g.n + j] = m.values[i] * m.values[j] * scale;
  return g;
}

FringeSpacing fringe_spacing(const PhysicalParams& p, const ScreenConfig& screen) {
  if (!(p.slit_offset > 0.0))
    throw DegenerateGeometryError("fringe spacing is undefined for zero slit offset");
  if (!(p.kx > 0.0)) throw DegenerateGeometryError("fringe spacing requires kx > 0");
  const double T = screen_time(p, screen);
  return {p.wavelength() * screen.distance_D / (2.0 * p.slit_offset),
          std::numbers::pi * p.hbar * T / (p.slit_offset * p.mass)};
}

double sqm_asymmetric_probability(const PhysicalParams& p, const ScreenConfig& screen) {
  if (!screen.is_mirror_symmetric())
    throw InvalidArgumentError("asymmetric-detection probability needs a mirror-symmetric screen");
  const double T = screen_time(p, screen);
  const double on_screen = joint_probability(p, screen.y_min, screen.y_max, screen.y_min,
                                             screen.y_max, T);
  double mirror = 0.0;
  for (std::size_t i = 0; i < screen.n_bins; ++i) {
    const std::size_t j = screen.n_bins - 1 - i;
    mirror += joint_detection_probability(p, screen, screen.bin_lo(i), screen.bin_lo(j));
  }
  return std::clamp(1.0 - mirror / on_screen, 0.0, 1.0);
}

double sqm_off_band_probability(const PhysicalParams& p, double t, double band) {
  if (!(band >= 0.0)) throw InvalidArgumentError("band must be >= 0");
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto tail = [&](double y1) {
    auto f = [&](double y2) { return joint_density(p, y1, y2, t); };
    return quad::integrate(f, band - y1, inf, 1e-11) + quad::integrate(f, -inf, -band - y1, 1e-11);
  };
  return quad::integrate(tail, -inf, inf, 1e-10);
}

}  // namespace twoslit
