#include "twoslit/ensemble.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "twoslit/errors.hpp"

namespace twoslit {

double EnsembleCounts::rejection_fraction() const noexcept {
  const std::size_t total = completed + rejected_node;
  return total == 0 ? 0.0 : static_cast<double>(rejected_node) / static_cast<double>(total);
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("TWOSLIT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EnsembleResult run_ensemble(const PhysicalParams& p, const SamplerConfig& sampler,
                            const IntegratorConfig& integ, double T,
                            const EnsembleOptions& options) {
  p.validate();
  sampler.validate();
  integ.validate();
  if (!(T > 0.0)) throw InvalidArgumentError("screen time must be > 0");

  const PairSampler draw(p, sampler.conditioning);
  const std::size_t n = sampler.n_pairs;

  EnsembleResult out;
  out.conditioning_mass = draw.equilibrium_mass();
  out.trajectories.resize(n);
  std::vector<std::size_t> proposals(n, 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) {
        auto rng = pair_stream(sampler.seed, i);
        const PairState start = draw.draw(rng, proposals[i]);
        out.trajectories[i] = integrate_trajectory(p, start, T, integ, options.sample_stride);
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };

  const std::size_t threads =
      std::min(n, options.threads > 0 ? options.threads : default_thread_count());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto& c = out.counts;
  for (std::size_t i = 0; i < n; ++i) {
    c.proposals += proposals[i];
    const Trajectory& tr = out.trajectories[i];
    switch (tr.status) {
      case TrajectoryStatus::completed:
        ++c.completed;
        c.axis_crossings += tr.axis_crossings;
        break;
      case TrajectoryStatus::rejected_node: ++c.rejected_node; break;
      case TrajectoryStatus::rejected_condition: ++c.rejected_condition; break;
    }
  }
  if (static_cast<double>(n) / static_cast<double>(c.proposals) < PairSampler::kMinAcceptance)
    throw ConditioningStarvedError("sampler acceptance rate below 1e-4");
  return out;
}

}  // namespace twoslit
