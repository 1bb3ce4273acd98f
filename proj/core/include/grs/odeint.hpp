#pragma once

// Fixed-step classical RK4 with a step-doubling error estimate per step and
// cubic Hermite dense output on the (state, derivative) knots.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "grs/errors.hpp"

namespace grs {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct Knot {
  double t = 0.0;
  State<N> y{};
  State<N> dy{};   // field evaluated at (t, y)
  double err = 0;  // step-doubling estimate of the local error of the step ending here
};

template <std::size_t N>
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::vector<Knot<N>> knots, double step) : knots_(std::move(knots)), step_(step) {}

  const std::vector<Knot<N>>& knots() const { return knots_; }
  std::size_t size() const { return knots_.size(); }
  double step() const { return step_; }
  double t0() const { return knots_.front().t; }
  double t1() const { return knots_.back().t; }
  const State<N>& final_state() const { return knots_.back().y; }

  double max_error() const {
    double m = 0.0;
    for (const auto& k : knots_) m = std::max(m, k.err);
    return m;
  }

 private:
  std::vector<Knot<N>> knots_;
  double step_ = 0.0;
};

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double a, const State<N>& k) {
  State<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + a * k[i];
  return r;
}

template <std::size_t N, class Field>
State<N> rk4_advance(Field& field, double t, const State<N>& y, const State<N>& k1, double h) {
  const State<N> k2 = field(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const State<N> k3 = field(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const State<N> k4 = field(t + h, axpy(y, h, k3));
  State<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return r;
}

}  // namespace detail

/// One classical RK4 step.
template <std::size_t N, class Field>
State<N> rk4_step(Field&& field, double t, const State<N>& y, double h) {
  const State<N> k1 = field(t, y);
  return detail::rk4_advance<N>(field, t, y, k1, h);
}

/// Integrates y' = field(t, y) from t0 to t1 with ceil((t1-t0)/h) equal steps.
///
/// The field is called in chronological order within each step, so stateful
/// fields (e.g. branch-tracking root solvers) see a continuous sequence of
/// arguments. Exceptions thrown by the field propagate unchanged.
template <std::size_t N, class Field>
Trajectory<N> rk4_integrate(Field&& field, const State<N>& y0, double t0, double t1, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw RangeError("rk4_integrate: step must be positive");
  if (!(t1 > t0)) throw RangeError("rk4_integrate: t1 must exceed t0");
  const double span = t1 - t0;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / h - 1e-9)));
  const double hh = span / static_cast<double>(n);

  std::vector<Knot<N>> knots;
  knots.reserve(n + 1);
  State<N> y = y0;
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * hh;
    const State<N> k1 = field(t, y);
    knots.push_back({t, y, k1, err});

    const State<N> full = detail::rk4_advance<N>(field, t, y, k1, hh);
    const State<N> half = detail::rk4_advance<N>(field, t, y, k1, 0.5 * hh);
    const State<N> k1b = field(t + 0.5 * hh, half);
    const State<N> twice = detail::rk4_advance<N>(field, t + 0.5 * hh, half, k1b, 0.5 * hh);
    err = 0.0;
    // error of the full step that is kept: |full - twice| * 16/15
    for (std::size_t j = 0; j < N; ++j) err = std::max(err, std::abs(full[j] - twice[j]) * (16.0 / 15.0));
    y = full;
  }
  knots.push_back({t1, y, field(t1, y), err});
  return Trajectory<N>(std::move(knots), hh);
}

namespace detail {

template <std::size_t N>
std::size_t bracket(const Trajectory<N>& traj, double t) {
  const auto& ks = traj.knots();
  const double slack = 1e-12 * std::max(1.0, std::abs(traj.t1() - traj.t0()));
  if (ks.size() < 2 || t < traj.t0() - slack || t > traj.t1() + slack || std::isnan(t)) {
    throw RangeError("hermite_eval: t = " + std::to_string(t) + " outside [" +
                     std::to_string(traj.t0()) + ", " + std::to_string(traj.t1()) + "]");
  }
  auto it = std::upper_bound(ks.begin(), ks.end(), t,
                             [](double v, const Knot<N>& k) { return v < k.t; });
  std::size_t i = static_cast<std::size_t>(it - ks.begin());
  if (i == 0) return 0;
  return std::min(i - 1, ks.size() - 2);
}

}  // namespace detail

/// Cubic Hermite interpolation between the bracketing knots; exact at knots.
template <std::size_t N>
State<N> hermite_eval(const Trajectory<N>& traj, double t) {
  const std::size_t i = detail::bracket(traj, t);
  const auto& a = traj.knots()[i];
  const auto& b = traj.knots()[i + 1];
  if (t == a.t) return a.y;
  if (t == b.t) return b.y;
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  State<N> r;
  for (std::size_t j = 0; j < N; ++j) {
    r[j] = h00 * a.y[j] + h10 * h * a.dy[j] + h01 * b.y[j] + h11 * h * b.dy[j];
  }
  return r;
}

/// Derivative of the Hermite interpolant; equals the stored field value at knots.
template <std::size_t N>
State<N> hermite_derivative(const Trajectory<N>& traj, double t) {
  const std::size_t i = detail::bracket(traj, t);
  const auto& a = traj.knots()[i];
  const auto& b = traj.knots()[i + 1];
  if (t == a.t) return a.dy;
  if (t == b.t) return b.dy;
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double d00 = 6.0 * s * (s - 1.0) / h;
  const double d10 = (1.0 - s) * (1.0 - 3.0 * s);
  const double d01 = -d00;
  const double d11 = s * (3.0 * s - 2.0);
  State<N> r;
  for (std::size_t j = 0; j < N; ++j) {
    r[j] = d00 * a.y[j] + d10 * a.dy[j] + d01 * b.y[j] + d11 * b.dy[j];
  }
  return r;
}

}  // namespace grs
