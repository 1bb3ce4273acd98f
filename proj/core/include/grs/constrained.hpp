#pragma once

// The per-step algebra behind integrated meridians.
//
// Each constrained case fixes the velocity (f', g') at a point (u, f, g) as a
// root of
//     P f' + Q g' = R          (linear: derivative of the defining relation)
//     f'^2 + s g'^2 = 1        (unit speed, s = -1 elliptic, +1 hyperbolic)
// and its second derivatives follow by differentiating both equations once.

#include <functional>
#include <optional>
#include <vector>

#include "grs/meridian.hpp"
#include "grs/odeint.hpp"

namespace grs {

struct LinearConstraint {
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
};

/// Real roots (f', g') of the linear/unit-speed pair, larger f' first.
/// Returns an empty vector when the discriminant is negative.
std::vector<State<2>> unit_speed_roots(const LinearConstraint& c, int s);

struct UnitSpeedSystem {
  int s = -1;
  std::function<LinearConstraint(double u, double f, double g)> coeffs;
  /// d/du of (P, Q, R) along the curve.
  std::function<LinearConstraint(double u, double f, double g, double fp, double gp)> rates;
  /// Algebraic relation carried by the state, empty when there is none.
  std::function<double(double u, double f, double g)> residual;
  /// Preferred initial velocity; empty means "use the descriptor branch flag".
  std::function<State<2>(double u, double f, double g)> initial_hint;
};

/// Throws ParamError for cases that are not constrained.
UnitSpeedSystem make_unit_speed_system(const FamilyDescriptor& desc);

/// Root nearest to hint. NoRealRootError when none exists.
State<2> nearest_root(const UnitSpeedSystem& sys, double u, const State<2>& y,
                      const State<2>& hint);

/// (f'', g'') from the differentiated system at (u, y, dy).
State<2> second_derivatives(const UnitSpeedSystem& sys, double u, const State<2>& y,
                            const State<2>& dy);

}  // namespace grs
