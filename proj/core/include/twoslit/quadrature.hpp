#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace twoslit::quad {

/// Relative tolerance used for per-bin integrals; tighter than the 1e-8
/// absolute budget for any bin mass bounded by one.
inline constexpr double kBinTolerance = 1e-10;

/// Adaptive 31-point Gauss-Kronrod on [a, b]; infinite limits allowed.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = kBinTolerance) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  return Rule::integrate(std::forward<F>(f), a, b, 15, rel_tol);
}

/// Nested adaptive rule over [x0, x1] x [y0, y1]. The inner integral runs
/// at a tenth of the outer tolerance.
template <class F>
double integrate_2d(F&& f, double x0, double x1, double y0, double y1,
                    double rel_tol = kBinTolerance) {
  auto inner = [&](double x) {
    return integrate([&](double y) { return f(x, y); }, y0, y1, 0.1 * rel_tol);
  };
  return integrate(inner, x0, x1, rel_tol);
}

}  // namespace twoslit::quad
