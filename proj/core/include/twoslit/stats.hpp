#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace twoslit {

/// Fixed-range counting histogram with explicit under/overflow.
struct Histogram {
  double y_min = 0.0;
  double bin_width = 1.0;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;

  static Histogram over(double y_min, double y_max, std::size_t n_bins);

  void add(double y);
  double bin_lo(std::size_t i) const noexcept { return y_min + static_cast<double>(i) * bin_width; }
  double bin_hi(std::size_t i) const noexcept { return bin_lo(i + 1); }
  double y_max() const noexcept { return bin_lo(counts.size()); }
  /// Every recorded value, in range or not.
  std::size_t total() const noexcept;
};

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
};

/// Pearson goodness-of-fit of observed counts against bin probabilities
/// (normalized internally), with dof = bins - 1.
ChiSquareResult chi_square_test(std::span<const std::size_t> observed,
                                std::span<const double> probabilities);

}  // namespace twoslit
