#pragma once

#include "twoslit/params.hpp"

namespace twoslit {

/// Complex width sigma0 * (1 + i s t).
Complex sigma_t(const PhysicalParams& p, double t);

/// Reparameterization constant 1 / [2 (1 + exp(-Y^2 / 2 sigma0^2))].
double normalization_N(const PhysicalParams& p);

/// Time-evolved Gaussian packet emerging from slit A or B.
Complex psi_slit(const PhysicalParams& p, Slit which, double x, double y, double t);

/// Both slit packets at the same (x = 0, y, t); the pair shares every
/// intermediate so the hot paths evaluate one sigma_t and one prefactor.
struct SlitAmplitudes {
  Complex a;
  Complex b;
};
SlitAmplitudes slit_amplitudes(const PhysicalParams& p, double y, double t);

/// Symmetric two-particle wave function, four-term form.
Complex psi_total(const PhysicalParams& p, double x1, double y1, double x2, double y2, double t);

/// Same wave function written as N (psi_A(1) + psi_B(1)) (psi_A(2) + psi_B(2)).
Complex psi_total_factorized(const PhysicalParams& p, double x1, double y1, double x2, double y2,
                             double t);

/// Integral of |psi_A + psi_B|^2 over y. Time-invariant; closed form
/// 2|a|^2 (1 + exp(-Y^2 / 2 sigma0^2) exp(-2 ky^2 sigma0^2)).
double one_particle_norm(const PhysicalParams& p);

/// Marginal density of one particle's y at time t (the other coordinate
/// integrated out). Uses the factorization of the pair wave function.
double one_particle_density(const PhysicalParams& p, double y, double t);

}  // namespace twoslit
