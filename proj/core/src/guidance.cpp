#include "twoslit/guidance.hpp"

#include <cmath>
#include <numbers>

#include "twoslit/errors.hpp"
#include "twoslit/wavefunction.hpp"

namespace twoslit {

double node_epsilon(const PhysicalParams& p, double t) {
  const double scale = std::norm(p.amplitude) /
                       std::sqrt(2.0 * std::numbers::pi * std::norm(sigma_t(p, t)));
  return 1e-12 * scale;
}

namespace {

struct Packets {
  Complex a1, b1, a2, b2;
  Complex psi;
  Complex width;  // 4 sigma0 sigma_t
};

Packets evaluate(const PhysicalParams& p, const PairState& s) {
  const auto one = slit_amplitudes(p, s.y1, s.t);
  const auto two = slit_amplitudes(p, s.y2, s.t);
  Packets k{one.a, one.b, two.a, two.b, {}, 4.0 * p.sigma0 * sigma_t(p, s.t)};
  k.psi = normalization_N(p) * (k.a1 * k.b2 + k.a2 * k.b1 + k.a1 * k.a2 + k.b1 * k.b2);
  return k;
}

// Logarithmic derivative of the A and B packets with respect to their own y.
Complex log_slope_a(const PhysicalParams& p, double y, double t, Complex width) {
  return -2.0 * (y - p.slit_offset - p.uy() * t) / width + Complex(0.0, p.ky);
}
Complex log_slope_b(const PhysicalParams& p, double y, double t, Complex width) {
  return -2.0 * (y + p.slit_offset + p.uy() * t) / width - Complex(0.0, p.ky);
}

}  // namespace

std::optional<VelocityPair> try_velocity(const PhysicalParams& p, const PairState& s) {
  const Packets k = evaluate(p, s);
  if (!(std::abs(k.psi) > node_epsilon(p, s.t))) return std::nullopt;

  const Complex ga1 = log_slope_a(p, s.y1, s.t, k.width);
  const Complex gb1 = log_slope_b(p, s.y1, s.t, k.width);
  const Complex ga2 = log_slope_a(p, s.y2, s.t, k.width);
  const Complex gb2 = log_slope_b(p, s.y2, s.t, k.width);

  const double n = normalization_N(p);
  const Complex d1 =
      n * (ga1 * k.a1 * k.b2 + gb1 * k.a2 * k.b1 + ga1 * k.a1 * k.a2 + gb1 * k.b1 * k.b2);
  const Complex d2 =
      n * (gb2 * k.a1 * k.b2 + ga2 * k.a2 * k.b1 + ga2 * k.a1 * k.a2 + gb2 * k.b1 * k.b2);

  const double scale = p.hbar / p.mass;
  return VelocityPair{scale * (d1 / k.psi).imag(), scale * (d2 / k.psi).imag()};
}

VelocityPair velocity(const PhysicalParams& p, const PairState& s) {
  if (auto v = try_velocity(p, s)) return *v;
  throw NodeProximityError("guidance velocity evaluated at a node of psi (y1=" +
                           std::to_string(s.y1) + ", y2=" + std::to_string(s.y2) +
                           ", t=" + std::to_string(s.t) + ")");
}

double velocity_com(const PhysicalParams& p, const PairState& s) {
  const VelocityPair v = velocity(p, s);
  return 0.5 * (v.v1 + v.v2);
}

ComVelocityTerms velocity_com_terms(const PhysicalParams& p, const PairState& s) {
  const Packets k = evaluate(p, s);
  if (!(std::abs(k.psi) > node_epsilon(p, s.t)))
    throw NodeProximityError("center-of-mass velocity evaluated at a node of psi");

  const double rate = p.spreading_rate() * s.t;
  ComVelocityTerms out;
  out.leading = p.spreading_rate() * rate * 0.5 * (s.y1 + s.y2) / (1.0 + rate * rate);

  const Complex sig = p.sigma0 * sigma_t(p, s.t);
  const Complex drive = (p.slit_offset + p.uy() * s.t) / sig + Complex(0.0, 2.0 * p.ky);
  const Complex asym = k.a1 * k.a2 - k.b1 * k.b2;
  out.residual =
      normalization_N(p) * p.hbar / (2.0 * p.mass) * (drive * asym / k.psi).imag();
  return out;
}

double com_closed_form(const PhysicalParams& p, double y0, double t) {
  const double rate = p.spreading_rate() * t;
  return y0 * std::sqrt(1.0 + rate * rate);
}

}  // namespace twoslit
