#pragma once

#include <cstddef>
#include <vector>

#include "twoslit/guidance.hpp"
#include "twoslit/params.hpp"

namespace twoslit {

enum class IntegratorMethod { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
  IntegratorMethod method = IntegratorMethod::rk45_adaptive;
  double dt_initial = 1e-2;  ///< fixed step for rk4, first trial step for rk45
  double tol = 1e-8;         ///< mixed absolute/relative local error target
  std::size_t max_steps = 1000000;
  std::size_t max_node_halvings = 20;

  void validate() const;
};

/// Half-width, in units of sigma0, of the band treated as the axis itself
/// when counting crossings.
inline constexpr double kAxisBand = 1e-12;

enum class TrajectoryStatus { completed, rejected_node, rejected_condition };

struct Trajectory {
  PairState initial;
  std::vector<PairState> samples;  ///< accepted steps, strictly increasing t (may be empty)
  PairState terminal;
  TrajectoryStatus status = TrajectoryStatus::completed;
  std::size_t steps = 0;
  /// Side changes of y1 or y2 between accepted steps; positions within
  /// kAxisBand * sigma0 of the axis count as on it, not on either side.
  std::size_t axis_crossings = 0;
};

/// Integrates the guidance equations from initial (t = 0) to T.
///
/// A NodeProximity during any stage halves the step and retries; after
/// max_node_halvings consecutive halvings the trajectory is rejected. When
/// sample_stride > 0 every sample_stride-th accepted step is recorded in
/// `samples` (t = 0 and t = T always are).
Trajectory integrate_trajectory(const PhysicalParams& p, const PairState& initial, double T,
                                const IntegratorConfig& integ, std::size_t sample_stride = 0);

}  // namespace twoslit
