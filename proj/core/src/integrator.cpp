#include "twoslit/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "twoslit/errors.hpp"

namespace twoslit {

void IntegratorConfig::validate() const {
  if (!(dt_initial > 0.0)) throw InvalidArgumentError("dt_initial must be > 0");
  if (!(tol > 0.0)) throw InvalidArgumentError("tol must be > 0");
  if (max_steps < 1) throw InvalidArgumentError("max_steps must be >= 1");
}

namespace {

using Vec = std::array<double, 2>;

std::optional<Vec> rhs(const PhysicalParams& p, double t, const Vec& y) {
  const auto v = try_velocity(p, PairState{y[0], y[1], t});
  if (!v) return std::nullopt;
  return Vec{v->v1, v->v2};
}

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = y;
  for (const auto& [c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

// Counts axis crossings and keeps every stride-th accepted state.
//
// A coordinate within `axis_band` of zero sits on the axis, which is an
// invariant set: a particle started there only picks up roundoff, and
// roundoff changing sign is not a crossing. Crossings are counted between
// successive definite sides instead.
class Recorder {
 public:
  Recorder(Trajectory& tr, std::size_t stride, double axis_band)
      : tr_(tr), stride_(stride), band_(axis_band),
        side1_(side(tr.initial.y1)), side2_(side(tr.initial.y2)) {}

  void accept(const PairState& next, bool final) {
    ++tr_.steps;
    update(side1_, next.y1);
    update(side2_, next.y2);
    if (stride_ > 0 && (final || tr_.steps % stride_ == 0)) tr_.samples.push_back(next);
  }

 private:
  int side(double y) const { return y > band_ ? 1 : (y < -band_ ? -1 : 0); }

  void update(int& last, double y) {
    const int now = side(y);
    if (now == 0) return;
    if (last != 0 && now != last) ++tr_.axis_crossings;
    last = now;
  }

  Trajectory& tr_;
  std::size_t stride_;
  double band_;
  int side1_, side2_;
};

void run_rk45(const PhysicalParams& p, double T, const IntegratorConfig& cfg, Trajectory& tr,
              Recorder& rec) {
  double t = 0.0;
  Vec y{tr.initial.y1, tr.initial.y2};
  auto k1 = rhs(p, t, y);
  if (!k1) {
    tr.status = TrajectoryStatus::rejected_node;
    return;
  }
  double h = std::min(cfg.dt_initial, T);
  std::size_t halvings = 0;
  std::size_t attempts = 0;

  while (t < T) {
    if (++attempts > cfg.max_steps) {
      tr.status = TrajectoryStatus::rejected_node;
      return;
    }
    const bool last = t + h >= T;
    if (last) h = T - t;

    using namespace dp;
    std::optional<Vec> k2, k3, k4, k5, k6, k7;
    Vec y5;
    bool node = !(k2 = rhs(p, t + c2 * h, axpy(y, h, {{a21, &*k1}})));
    if (!node) node = !(k3 = rhs(p, t + c3 * h, axpy(y, h, {{a31, &*k1}, {a32, &*k2}})));
    if (!node)
      node = !(k4 = rhs(p, t + c4 * h, axpy(y, h, {{a41, &*k1}, {a42, &*k2}, {a43, &*k3}})));
    if (!node)
      node = !(k5 = rhs(p, t + c5 * h,
                        axpy(y, h, {{a51, &*k1}, {a52, &*k2}, {a53, &*k3}, {a54, &*k4}})));
    if (!node)
      node = !(k6 = rhs(p, t + h,
                        axpy(y, h,
                             {{a61, &*k1}, {a62, &*k2}, {a63, &*k3}, {a64, &*k4}, {a65, &*k5}})));
    if (!node) {
      y5 = axpy(y, h, {{b1, &*k1}, {b3, &*k3}, {b4, &*k4}, {b5, &*k5}, {b6, &*k6}});
      node = !(k7 = rhs(p, last ? T : t + h, y5));
    }
    if (node) {
      if (++halvings > cfg.max_node_halvings) {
        tr.status = TrajectoryStatus::rejected_node;
        return;
      }
      h *= 0.5;
      continue;
    }

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * (*k1)[i] + e3 * (*k3)[i] + e4 * (*k4)[i] + e5 * (*k5)[i] +
                            e6 * (*k6)[i] + e7 * (*k7)[i]);
      const double scale = cfg.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      t = last ? T : t + h;
      y = y5;
      k1 = k7;
      halvings = 0;
      rec.accept(PairState{y[0], y[1], t}, last);
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  tr.terminal = PairState{y[0], y[1], T};
}

void run_rk4(const PhysicalParams& p, double T, const IntegratorConfig& cfg, Trajectory& tr,
             Recorder& rec) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(T / cfg.dt_initial - 1e-12)));
  if (n > cfg.max_steps) throw InvalidArgumentError("rk4 step count exceeds max_steps");
  const double H = T / static_cast<double>(n);
  Vec y{tr.initial.y1, tr.initial.y2};

  // One classical RK4 step; nullopt at a node.
  auto step = [&](double t, const Vec& y0, double h) -> std::optional<Vec> {
    const auto k1 = rhs(p, t, y0);
    if (!k1) return std::nullopt;
    const auto k2 = rhs(p, t + 0.5 * h, axpy(y0, h, {{0.5, &*k1}}));
    if (!k2) return std::nullopt;
    const auto k3 = rhs(p, t + 0.5 * h, axpy(y0, h, {{0.5, &*k2}}));
    if (!k3) return std::nullopt;
    const auto k4 = rhs(p, t + h, axpy(y0, h, {{1.0, &*k3}}));
    if (!k4) return std::nullopt;
    return axpy(y0, h, {{1.0 / 6, &*k1}, {1.0 / 3, &*k2}, {1.0 / 3, &*k3}, {1.0 / 6, &*k4}});
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double t0 = static_cast<double>(i) * H;
    const double t1 = i + 1 == n ? T : static_cast<double>(i + 1) * H;
    // Split the macro step into 2^level substeps until no stage hits a node.
    std::optional<Vec> next;
    for (std::size_t level = 0; level <= cfg.max_node_halvings && !next; ++level) {
      const std::size_t parts = std::size_t{1} << level;
      const double h = (t1 - t0) / static_cast<double>(parts);
      std::optional<Vec> cur = y;
      for (std::size_t k = 0; k < parts && cur; ++k)
        cur = step(t0 + static_cast<double>(k) * h, *cur, h);
      next = cur;
    }
    if (!next) {
      tr.status = TrajectoryStatus::rejected_node;
      return;
    }
    y = *next;
    rec.accept(PairState{y[0], y[1], t1}, i + 1 == n);
  }
  tr.terminal = PairState{y[0], y[1], T};
}

}  // namespace

Trajectory integrate_trajectory(const PhysicalParams& p, const PairState& initial, double T,
                                const IntegratorConfig& integ, std::size_t sample_stride) {
  integ.validate();
  if (initial.t != 0.0) throw InvalidArgumentError("trajectories start at t = 0");
  if (!(T > 0.0)) throw InvalidArgumentError("screen time must be > 0");

  Trajectory tr;
  tr.initial = initial;
  tr.terminal = initial;
  if (sample_stride > 0) tr.samples.push_back(initial);
  Recorder rec(tr, sample_stride, kAxisBand * p.sigma0);
  if (integ.method == IntegratorMethod::rk45_adaptive)
    run_rk45(p, T, integ, tr, rec);
  else
    run_rk4(p, T, integ, tr, rec);
  return tr;
}

}  // namespace twoslit
