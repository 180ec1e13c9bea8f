#pragma once

#include <optional>

#include "twoslit/params.hpp"

namespace twoslit {

/// Configuration-space point of the pair; x-motion is uniform and implicit.
struct PairState {
  double y1 = 0.0;
  double y2 = 0.0;
  double t = 0.0;
};

struct VelocityPair {
  double v1 = 0.0;
  double v2 = 0.0;
};

/// |psi| threshold below which guidance is treated as singular:
/// 1e-12 * |a|^2 (2 pi |sigma_t|^2)^(-1/2).
double node_epsilon(const PhysicalParams& p, double t);

/// Guidance velocities (hbar/m) Im[d_yi psi / psi] from the analytic
/// four-term derivative expansion. Empty when |psi| <= node_epsilon.
std::optional<VelocityPair> try_velocity(const PhysicalParams& p, const PairState& s);

/// As try_velocity, but throws NodeProximityError at a node.
VelocityPair velocity(const PhysicalParams& p, const PairState& s);

/// Vertical center-of-mass velocity (v1 + v2) / 2.
double velocity_com(const PhysicalParams& p, const PairState& s);

/// Center-of-mass velocity split into the free-spreading term
/// s^2 t (y1 + y2)/2 / (1 + s^2 t^2) and the slit-asymmetry residual
/// driven by psi_A(1) psi_A(2) - psi_B(1) psi_B(2).
struct ComVelocityTerms {
  double leading = 0.0;
  double residual = 0.0;
  double total() const noexcept { return leading + residual; }
};
ComVelocityTerms velocity_com_terms(const PhysicalParams& p, const PairState& s);

/// y0 sqrt(1 + s^2 t^2): the center-of-mass path once the residual is dropped.
double com_closed_form(const PhysicalParams& p, double y0, double t);

}  // namespace twoslit
