#include "twoslit/stats.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "twoslit/errors.hpp"

namespace twoslit {

Histogram Histogram::over(double y_min, double y_max, std::size_t n_bins) {
  if (!(y_max > y_min) || n_bins == 0) throw InvalidArgumentError("empty histogram range");
  Histogram h;
  h.y_min = y_min;
  h.bin_width = (y_max - y_min) / static_cast<double>(n_bins);
  h.counts.assign(n_bins, 0);
  return h;
}

void Histogram::add(double y) {
  const double f = std::floor((y - y_min) / bin_width);
  if (!(f >= 0.0)) {
    ++underflow;
  } else if (f >= static_cast<double>(counts.size())) {
    ++overflow;
  } else {
    ++counts[static_cast<std::size_t>(f)];
  }
}

std::size_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), underflow + overflow);
}

ChiSquareResult chi_square_test(std::span<const std::size_t> observed,
                                std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.size() < 2)
    throw InvalidArgumentError("chi-square needs matching spans of at least two bins");
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
  const double mass = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (!(n > 0.0) || !(mass > 0.0)) throw InvalidArgumentError("chi-square needs non-empty data");

  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = n * probabilities[i] / mass;
    if (!(expected > 0.0)) throw InvalidArgumentError("chi-square bin with zero expectation");
    const double d = static_cast<double>(observed[i]) - expected;
    r.statistic += d * d / expected;
  }
  r.dof = observed.size() - 1;
  r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(r.dof), 0.5 * r.statistic);
  return r;
}

}  // namespace twoslit
