#include "twoslit/wavefunction.hpp"

#include <cmath>
#include <numbers>

#include "twoslit/errors.hpp"

namespace twoslit {

void PhysicalParams::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgumentError("hbar must be > 0");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgumentError("mass must be > 0");
  if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) throw InvalidArgumentError("sigma0 must be > 0");
  if (!(slit_offset >= 0.0) || !std::isfinite(slit_offset))
    throw InvalidArgumentError("slit_offset must be >= 0");
  if (!std::isfinite(kx) || !std::isfinite(ky)) throw InvalidArgumentError("wave numbers must be finite");
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag()))
    throw InvalidArgumentError("amplitude must be finite");
}

Complex sigma_t(const PhysicalParams& p, double t) {
  return p.sigma0 * Complex(1.0, p.spreading_rate() * t);
}

double normalization_N(const PhysicalParams& p) {
  const double r = p.slit_offset / p.sigma0;
  return 1.0 / (2.0 * (1.0 + std::exp(-0.5 * r * r)));
}

namespace {

// a (2 pi sigma_t^2)^(-1/4), principal branch.
Complex prefactor(const PhysicalParams& p, Complex st) {
  return p.amplitude * std::pow(2.0 * std::numbers::pi * st * st, -0.25);
}

// Exponent of one packet; `sign` is +1 for A and -1 for B.
Complex packet_exponent(const PhysicalParams& p, double sign, double x, double y, double t,
                        Complex st) {
  const double shift = p.slit_offset + p.uy() * t;
  const double c = y - sign * shift;
  const double phase = p.kx * x + sign * p.ky * (y - sign * (p.slit_offset + 0.5 * p.uy() * t)) -
                       p.energy_x() * t / p.hbar;
  return -(c * c) / (4.0 * p.sigma0 * st) + Complex(0.0, phase);
}

}  // namespace

Complex psi_slit(const PhysicalParams& p, Slit which, double x, double y, double t) {
  const Complex st = sigma_t(p, t);
  const double sign = which == Slit::A ? 1.0 : -1.0;
  return prefactor(p, st) * std::exp(packet_exponent(p, sign, x, y, t, st));
}

SlitAmplitudes slit_amplitudes(const PhysicalParams& p, double y, double t) {
  const Complex st = sigma_t(p, t);
  const Complex pre = prefactor(p, st);
  return {pre * std::exp(packet_exponent(p, 1.0, 0.0, y, t, st)),
          pre * std::exp(packet_exponent(p, -1.0, 0.0, y, t, st))};
}

Complex psi_total(const PhysicalParams& p, double x1, double y1, double x2, double y2, double t) {
  const Complex a1 = psi_slit(p, Slit::A, x1, y1, t);
  const Complex b1 = psi_slit(p, Slit::B, x1, y1, t);
  const Complex a2 = psi_slit(p, Slit::A, x2, y2, t);
  const Complex b2 = psi_slit(p, Slit::B, x2, y2, t);
  return normalization_N(p) * (a1 * b2 + a2 * b1 + a1 * a2 + b1 * b2);
}

Complex psi_total_factorized(const PhysicalParams& p, double x1, double y1, double x2, double y2,
                             double t) {
  const Complex one = psi_slit(p, Slit::A, x1, y1, t) + psi_slit(p, Slit::B, x1, y1, t);
  const Complex two = psi_slit(p, Slit::A, x2, y2, t) + psi_slit(p, Slit::B, x2, y2, t);
  return normalization_N(p) * one * two;
}

double one_particle_norm(const PhysicalParams& p) {
  const double r = p.slit_offset / p.sigma0;
  const double k = p.ky * p.sigma0;
  return 2.0 * std::norm(p.amplitude) * (1.0 + std::exp(-0.5 * r * r - 2.0 * k * k));
}

double one_particle_density(const PhysicalParams& p, double y, double t) {
  const auto [a, b] = slit_amplitudes(p, y, t);
  const double n = normalization_N(p);
  return n * n * one_particle_norm(p) * std::norm(a + b);
}

}  // namespace twoslit
