#pragma once

#include <cstddef>
#include <vector>

#include "twoslit/params.hpp"

namespace twoslit {

/// Detector geometry: a row of n_bins detectors of width bin_delta
/// starting at y_min, on a screen at x = distance_D.
struct ScreenConfig {
  double distance_D = 0.0;
  double bin_delta = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  std::size_t n_bins = 0;

  /// Grid centered on the axis, covering at least [-half_extent, half_extent]
  /// with an even number of bins so every detector has a mirror partner.
  static ScreenConfig symmetric(double distance_D, double bin_delta, double half_extent);

  /// Throws InvalidArgumentError on inconsistent geometry or T = D/u_x <= 0.
  void validate(const PhysicalParams& p) const;

  double bin_lo(std::size_t i) const noexcept { return y_min + static_cast<double>(i) * bin_delta; }
  double bin_hi(std::size_t i) const noexcept { return bin_lo(i + 1); }
  bool is_mirror_symmetric() const noexcept;
};

/// Arrival time at the screen, D / u_x.
double screen_time(const PhysicalParams& p, const ScreenConfig& screen);

/// |psi(y1, y2, t)|^2; the common x-phase cancels.
double joint_density(const PhysicalParams& p, double y1, double y2, double t);

/// Probability mass of the box [y1_lo, y1_hi] x [y2_lo, y2_hi] at time t,
/// by nested adaptive quadrature of joint_density.
double joint_probability(const PhysicalParams& p, double y1_lo, double y1_hi, double y2_lo,
                         double y2_hi, double t);

/// Joint detection probability of detectors [Q1, Q1 + delta] and
/// [Q2, Q2 + delta] at screen time.
double joint_detection_probability(const PhysicalParams& p, const ScreenConfig& screen, double Q1,
                                   double Q2);

/// Equal-width binned curve; values are per-bin probability masses.
struct BinnedCurve {
  double y_min = 0.0;
  double bin_width = 0.0;
  std::vector<double> values;

  double bin_lo(std::size_t i) const noexcept { return y_min + static_cast<double>(i) * bin_width; }
  double bin_hi(std::size_t i) const noexcept { return bin_lo(i + 1); }
  double total() const noexcept;
};

/// Per-bin mass of a one-particle marginal at time t.
BinnedCurve marginal_density(const PhysicalParams& p, double t, double y_min, double y_max,
                             std::size_t n_bins);
BinnedCurve marginal_density(const PhysicalParams& p, double t, const ScreenConfig& screen);

/// Mass of the one-particle marginal on [lo, hi] (infinite limits allowed).
double marginal_mass(const PhysicalParams& p, double lo, double hi, double t);

/// Bin-pair probability masses over the screen at time t, row-major (y1, y2).
struct JointDensityGrid {
  std::size_t n = 0;
  double y_min = 0.0;
  double bin_width = 0.0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
  double total() const noexcept;
};
JointDensityGrid joint_density_grid(const PhysicalParams& p, const ScreenConfig& screen, double t);

struct FringeSpacing {
  double from_wavelength = 0.0;  ///< lambda D / 2Y
  double from_time = 0.0;        ///< pi hbar T / (Y m)
};

/// Distance between neighbouring interference maxima on the screen.
/// Throws DegenerateGeometryError when Y = 0 or kx <= 0.
FringeSpacing fringe_spacing(const PhysicalParams& p, const ScreenConfig& screen);

/// Probability that a coincident detection on the screen is NOT in a
/// mirror-symmetric detector pair ([Q, Q+delta] with [-Q-delta, -Q]),
/// conditional on both particles hitting the screen.
double sqm_asymmetric_probability(const PhysicalParams& p, const ScreenConfig& screen);

/// P(|y1 + y2| > band) at time t.
double sqm_off_band_probability(const PhysicalParams& p, double t, double band);

}  // namespace twoslit
