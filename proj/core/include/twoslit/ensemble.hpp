#pragma once

#include <cstddef>
#include <vector>

#include "twoslit/integrator.hpp"
#include "twoslit/sampler.hpp"

namespace twoslit {

struct EnsembleCounts {
  std::size_t completed = 0;
  std::size_t rejected_node = 0;
  std::size_t rejected_condition = 0;
  std::size_t proposals = 0;       ///< sampler draws, accepted or not
  std::size_t axis_crossings = 0;  ///< summed over completed trajectories

  double rejection_fraction() const noexcept;
};

struct EnsembleResult {
  std::vector<Trajectory> trajectories;  ///< index i is pair i
  EnsembleCounts counts;
  double conditioning_mass = 1.0;  ///< equilibrium probability of the conditioning region
};

struct EnsembleOptions {
  std::size_t threads = 0;        ///< 0: TWOSLIT_THREADS env var, else hardware concurrency
  std::size_t sample_stride = 0;  ///< forwarded to integrate_trajectory
};

/// Thread count from TWOSLIT_THREADS when set and valid, else hardware concurrency.
std::size_t default_thread_count();

/// Samples sampler.n_pairs initial pairs and integrates each to T.
///
/// Pair i uses pair_stream(seed, i) and lands in slot i, so the result is
/// bit-identical for any thread count.
EnsembleResult run_ensemble(const PhysicalParams& p, const SamplerConfig& sampler,
                            const IntegratorConfig& integ, double T,
                            const EnsembleOptions& options = {});

}  // namespace twoslit
