#include "twoslit/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "twoslit/errors.hpp"
#include "twoslit/wavefunction.hpp"

namespace twoslit {

void SamplerConfig::validate() const {
  if (n_pairs < 1) throw InvalidArgumentError("n_pairs must be >= 1");
  if (const auto* c = std::get_if<ComOffset>(&conditioning)) {
    if (!(c->width > 0.0)) throw InvalidArgumentError("com_offset window width must be > 0");
    if (!std::isfinite(c->mean)) throw InvalidArgumentError("com_offset mean must be finite");
  }
}

std::mt19937_64 pair_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// OneParticleTable

OneParticleTable::OneParticleTable(const PhysicalParams& p, std::size_t cells) {
  p.validate();
  if (cells < 2) throw InvalidArgumentError("table needs at least two cells");
  const double reach = p.slit_offset + 14.0 * p.sigma0;
  lo_ = -reach;
  hi_ = reach;
  width_ = (hi_ - lo_) / static_cast<double>(cells);

  using Gauss = boost::math::quadrature::gauss<double, 7>;
  cell_mass_.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = lo_ + static_cast<double>(i) * width_;
    cell_mass_[i] =
        Gauss::integrate([&](double y) { return one_particle_density(p, y, 0.0); }, a, a + width_);
  }

  left_.assign(cells + 1, 0.0);
  right_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) left_[i + 1] = left_[i] + cell_mass_[i];
  for (std::size_t i = cells; i-- > 0;) right_[i] = right_[i + 1] + cell_mass_[i];

  // Normalize each sum by its own total so both ends are exact at 0.
  const double total_l = left_.back();
  const double total_r = right_.front();
  for (auto& v : left_) v /= total_l;
  for (auto& v : right_) v /= total_r;
  for (auto& m : cell_mass_) m /= total_l;
}

std::size_t OneParticleTable::cell_of(double y) const {
  const double f = std::floor((y - lo_) / width_);
  const auto last = static_cast<double>(cell_mass_.size() - 1);
  return static_cast<std::size_t>(std::clamp(f, 0.0, last));
}

double OneParticleTable::cdf(double y) const {
  if (y <= lo_) return 0.0;
  if (y >= hi_) return 1.0;
  const std::size_t i = cell_of(y);
  const double frac = (y - (lo_ + static_cast<double>(i) * width_)) / width_;
  return left_[i] + frac * cell_mass_[i];
}

double OneParticleTable::survival(double y) const {
  if (y <= lo_) return 1.0;
  if (y >= hi_) return 0.0;
  const std::size_t i = cell_of(y);
  const double frac = (y - (lo_ + static_cast<double>(i) * width_)) / width_;
  return right_[i + 1] + (1.0 - frac) * cell_mass_[i];
}

double OneParticleTable::density(double y) const {
  if (y < lo_ || y > hi_) return 0.0;
  return cell_mass_[cell_of(y)] / width_;
}

double OneParticleTable::mass(double a, double b) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(b > a)) return 0.0;
  const std::size_t ia = cell_of(a);
  const std::size_t ib = cell_of(b);
  if (ia == ib) return cell_mass_[ia] * (b - a) / width_;

  const double a_end = lo_ + static_cast<double>(ia + 1) * width_;
  const double b_start = lo_ + static_cast<double>(ib) * width_;
  const double head = cell_mass_[ia] * (a_end - a) / width_;
  const double tail = cell_mass_[ib] * (b - b_start) / width_;
  const double middle = left_[ib] < right_[ia + 1] ? left_[ib] - left_[ia + 1]
                                                   : right_[ia + 1] - right_[ib];
  return head + std::max(middle, 0.0) + tail;
}

double OneParticleTable::sample_between(double a, double b, double u) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(b > a)) return a;
  const double target = u * mass(a, b);

  double y;
  if (survival(a) < 0.5) {
    // Right half: walk the survival function down from a.
    const double s = survival(a) - target;
    // right_ is non-increasing; first index whose value is < s, minus one.
    const auto it = std::upper_bound(right_.begin(), right_.end(), s, std::greater<>());
    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - right_.begin() - 1, 0)),
        cell_mass_.size() - 1);
    const double m = cell_mass_[i];
    const double frac = m > 0.0 ? (right_[i] - s) / m : 0.0;
    y = lo_ + (static_cast<double>(i) + std::clamp(frac, 0.0, 1.0)) * width_;
  } else {
    const double c = cdf(a) + target;
    const auto it = std::upper_bound(left_.begin(), left_.end(), c);
    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - left_.begin() - 1, 0)),
        cell_mass_.size() - 1);
    const double m = cell_mass_[i];
    const double frac = m > 0.0 ? (c - left_[i]) / m : 0.0;
    y = lo_ + (static_cast<double>(i) + std::clamp(frac, 0.0, 1.0)) * width_;
  }
  return std::clamp(y, a, b);
}

// ---------------------------------------------------------------------------
// PairSampler

PairSampler::PairSampler(const PhysicalParams& p, const Conditioning& c)
    : conditioning_(c), table_(p) {
  if (std::holds_alternative<OppositeSlits>(c)) {
    const double f0 = table_.cdf(0.0);
    region_mass_ = 2.0 * f0 * (1.0 - f0);
  } else if (const auto* w = std::get_if<ComOffset>(&c)) {
    if (!(w->width > 0.0)) throw InvalidArgumentError("com_offset window width must be > 0");
    // Tabulate h(y2) = rho(y2) * P(y1 in partner interval) on the table cells.
    constexpr std::size_t kCells = OneParticleTable::kDefaultCells;
    y2_lo_ = table_.lo();
    y2_width_ = (table_.hi() - table_.lo()) / static_cast<double>(kCells);
    constexpr std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
    constexpr std::array<double, 5> weights{0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};
    y2_cumulative_.assign(kCells + 1, 0.0);
    for (std::size_t i = 0; i < kCells; ++i) {
      const double a = y2_lo_ + static_cast<double>(i) * y2_width_;
      double avg = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double y2 = a + 0.5 * y2_width_ * (1.0 + nodes[k]);
        avg += 0.5 * weights[k] * table_.mass(partner_lo(y2), partner_hi(y2));
      }
      y2_cumulative_[i + 1] = y2_cumulative_[i] + table_.mass(a, a + y2_width_) * avg;
    }
    const double total = y2_cumulative_.back();
    region_mass_ = (w->opposite_sides ? 2.0 : 1.0) * total;
    if (!(total > 0.0))
      throw ConditioningStarvedError(
          "com_offset window has no probability mass under the equilibrium density");
    for (auto& v : y2_cumulative_) v /= total;
  }
}

double PairSampler::partner_lo(double y2) const {
  const auto& w = std::get<ComOffset>(conditioning_);
  return 2.0 * (w.mean - 0.5 * w.width) - y2;
}

double PairSampler::partner_hi(double y2) const {
  const auto& w = std::get<ComOffset>(conditioning_);
  const double hi = 2.0 * (w.mean + 0.5 * w.width) - y2;
  if (w.opposite_sides) return y2 > 0.0 ? std::min(hi, 0.0) : -1.0e300;
  return hi;
}

bool PairSampler::accepts(const PairState& s) const {
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NoConditioning>) {
          return true;
        } else if constexpr (std::is_same_v<T, OppositeSlits>) {
          return s.y1 * s.y2 < 0.0;
        } else {
          const double com = 0.5 * (s.y1 + s.y2);
          const bool inside = com >= c.mean - 0.5 * c.width && com <= c.mean + 0.5 * c.width;
          return inside && (!c.opposite_sides || s.y1 * s.y2 < 0.0);
        }
      },
      conditioning_);
}

PairState PairSampler::propose(std::mt19937_64& rng) const {
  const double lo = table_.lo();
  const double hi = table_.hi();
  PairState s;
  if (std::holds_alternative<NoConditioning>(conditioning_)) {
    s.y1 = table_.sample_between(lo, hi, uniform01(rng));
    s.y2 = table_.sample_between(lo, hi, uniform01(rng));
  } else if (std::holds_alternative<OppositeSlits>(conditioning_)) {
    const double neg = table_.sample_between(lo, 0.0, uniform01(rng));
    const double pos = table_.sample_between(0.0, hi, uniform01(rng));
    const bool swap = uniform01(rng) < 0.5;
    s.y1 = swap ? pos : neg;
    s.y2 = swap ? neg : pos;
  } else {
    const auto& w = std::get<ComOffset>(conditioning_);
    const double u = uniform01(rng);
    const auto it = std::upper_bound(y2_cumulative_.begin(), y2_cumulative_.end(), u);
    const std::size_t i = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - y2_cumulative_.begin() - 1, 0)),
        y2_cumulative_.size() - 2);
    const double m = y2_cumulative_[i + 1] - y2_cumulative_[i];
    const double frac = m > 0.0 ? std::clamp((u - y2_cumulative_[i]) / m, 0.0, 1.0) : 0.5;
    const double y2 = y2_lo_ + (static_cast<double>(i) + frac) * y2_width_;
    const double y1 = table_.sample_between(partner_lo(y2), partner_hi(y2), uniform01(rng));
    const bool swap = w.opposite_sides && uniform01(rng) < 0.5;
    s.y1 = swap ? y2 : y1;
    s.y2 = swap ? y1 : y2;
  }
  return s;
}

PairState PairSampler::draw(std::mt19937_64& rng, std::size_t& proposals) const {
  const auto limit = static_cast<std::size_t>(1.0 / kMinAcceptance);
  for (std::size_t k = 0; k < limit; ++k) {
    ++proposals;
    const PairState s = propose(rng);
    if (accepts(s)) return s;
  }
  throw ConditioningStarvedError("sampler acceptance fell below 1e-4 for a single pair");
}

std::vector<PairState> sample_initial_positions(const PhysicalParams& p,
                                                const SamplerConfig& sampler) {
  sampler.validate();
  const PairSampler draw(p, sampler.conditioning);
  std::vector<PairState> out;
  out.reserve(sampler.n_pairs);
  std::size_t proposals = 0;
  for (std::size_t i = 0; i < sampler.n_pairs; ++i) {
    auto rng = pair_stream(sampler.seed, i);
    out.push_back(draw.draw(rng, proposals));
  }
  const double rate = static_cast<double>(out.size()) / static_cast<double>(proposals);
  if (rate < PairSampler::kMinAcceptance)
    throw ConditioningStarvedError("sampler acceptance rate below 1e-4");
  return out;
}

}  // namespace twoslit
