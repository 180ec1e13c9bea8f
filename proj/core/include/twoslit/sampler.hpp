#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "twoslit/guidance.hpp"
#include "twoslit/params.hpp"

namespace twoslit {

struct NoConditioning {};

/// Keep pairs with the particles on opposite sides of the axis.
struct OppositeSlits {};

/// Keep pairs whose center of mass (y1 + y2)/2 lies in
/// [mean - width/2, mean + width/2], optionally also on opposite sides.
struct ComOffset {
  double mean = 0.0;
  double width = 0.0;
  bool opposite_sides = false;
};

using Conditioning = std::variant<NoConditioning, OppositeSlits, ComOffset>;

struct SamplerConfig {
  std::size_t n_pairs = 100000;
  std::uint64_t seed = 0;
  Conditioning conditioning = NoConditioning{};

  void validate() const;
};

/// Per-pair random stream derived from (seed, pair index) only, so results do
/// not depend on which thread handles which pair.
std::mt19937_64 pair_stream(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::mt19937_64& rng);

/// Inverse-CDF table of the one-particle t = 0 density, which is also the
/// marginal of |psi(t=0)|^2 for either particle.
///
/// The density is integrated per cell with a 7-point Gauss rule; within a
/// cell the CDF is linear. Cumulative sums are kept from both ends so tail
/// quantiles on either side keep their relative precision.
class OneParticleTable {
 public:
  static constexpr std::size_t kDefaultCells = 10000;

  explicit OneParticleTable(const PhysicalParams& p, std::size_t cells = kDefaultCells);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  double cdf(double y) const;       ///< P(Y <= y)
  double survival(double y) const;  ///< P(Y > y)
  /// P(a < Y <= b), computed from whichever end keeps precision.
  double mass(double a, double b) const;
  double density(double y) const;   ///< piecewise-constant table density

  /// Inverse-CDF draw restricted to [a, b); u in [0, 1).
  double sample_between(double a, double b, double u) const;

 private:
  std::size_t cell_of(double y) const;

  double lo_, hi_, width_;
  std::vector<double> cell_mass_;
  std::vector<double> left_;   // left_[i]  = mass of cells [0, i)
  std::vector<double> right_;  // right_[i] = mass of cells [i, n)
};

/// Draws initial pair positions from |psi(t=0)|^2 under a conditioning.
///
/// Every draw comes from the exact conditional law up to table resolution:
/// the y2 marginal under the conditioning is tabulated, and y1 is drawn
/// from the one-particle table truncated to the interval the conditioning
/// leaves. The conditioning predicate is then applied as a filter, so the
/// acceptance rate measures the sampler, not the rarity of the subensemble.
class PairSampler {
 public:
  static constexpr double kMinAcceptance = 1e-4;

  PairSampler(const PhysicalParams& p, const Conditioning& c);

  /// Probability of the conditioning region under |psi(t=0)|^2.
  double equilibrium_mass() const noexcept { return region_mass_; }

  /// Draws one accepted pair; `proposals` counts every draw including rejects.
  /// Throws ConditioningStarvedError if the acceptance floor is breached.
  PairState draw(std::mt19937_64& rng, std::size_t& proposals) const;

  bool accepts(const PairState& s) const;

  const OneParticleTable& table() const noexcept { return table_; }

 private:
  PairState propose(std::mt19937_64& rng) const;
  double partner_lo(double y2) const;
  double partner_hi(double y2) const;

  Conditioning conditioning_;
  OneParticleTable table_;
  // Tabulated y2 marginal under ComOffset (empty otherwise).
  std::vector<double> y2_cumulative_;
  double y2_lo_ = 0.0, y2_width_ = 0.0;
  double region_mass_ = 1.0;
};

/// Initial positions for sampler.n_pairs pairs, pair i drawn from
/// pair_stream(seed, i). Throws ConditioningStarvedError when the overall
/// acceptance rate falls below PairSampler::kMinAcceptance.
std::vector<PairState> sample_initial_positions(const PhysicalParams& p, const SamplerConfig& sampler);

}  // namespace twoslit
