#pragma once

#include <complex>
#include <numbers>

namespace twoslit {

using Complex = std::complex<double>;

enum class Slit { A, B };

/// Physical constants and source/slit geometry.
///
/// Slit centers sit at y = +slit_offset (A) and y = -slit_offset (B); the
/// incident plane wave travels along +x with wave numbers (kx, ky).
/// Natural units (hbar = mass = 1) are the defaults but every field stays
/// explicit so dimensional runs are possible.
struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double sigma0 = 1.0;       ///< slit half-width
  double slit_offset = 0.0;  ///< Y
  double kx = 0.0;
  double ky = 0.0;
  Complex amplitude{1.0, 0.0};

  /// Throws InvalidArgumentError unless sigma0, mass, hbar > 0 and Y >= 0.
  void validate() const;

  double ux() const noexcept { return hbar * kx / mass; }
  double uy() const noexcept { return hbar * ky / mass; }
  double energy_x() const noexcept { return 0.5 * mass * ux() * ux(); }
  double wavelength() const noexcept { return 2.0 * std::numbers::pi / kx; }

  /// s = hbar / (2 m sigma0^2); s*t is the dimensionless spreading parameter.
  double spreading_rate() const noexcept { return hbar / (2.0 * mass * sigma0 * sigma0); }
};

}  // namespace twoslit
