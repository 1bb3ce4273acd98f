#include "grs/constrained.hpp"

#include <algorithm>
#include <cmath>

#include "grs/errors.hpp"

namespace grs {

namespace {

constexpr int kMaxHalvings = 8;
constexpr double kDefaultDivisions = 1024.0;

// Real roots of a2 x^2 + a1 x + a0 = 0, degrading to the linear case.
std::vector<double> real_roots(double a2, double a1, double a0) {
  const double scale = std::abs(a2) + std::abs(a1) + std::abs(a0);
  if (scale == 0.0) return {};
  if (std::abs(a2) <= 1e-14 * scale) {
    if (a1 == 0.0) return {};
    return {-a0 / a1};
  }
  double disc = a1 * a1 - 4.0 * a2 * a0;
  if (disc < 0.0) {
    if (disc < -1e-12 * (a1 * a1 + std::abs(4.0 * a2 * a0))) return {};
    disc = 0.0;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (a1 + std::copysign(sq, a1));
  if (q == 0.0) return {0.0, 0.0};
  return {q / a2, a0 / q};
}

}  // namespace

std::vector<State<2>> unit_speed_roots(const LinearConstraint& c, int s) {
  const double sd = static_cast<double>(s);
  std::vector<State<2>> out;
  const double lead = c.Q * c.Q + sd * c.P * c.P;
  if (c.Q != 0.0 && std::abs(c.Q) >= std::abs(c.P)) {
    for (double fp : real_roots(lead, -2.0 * sd * c.R * c.P, sd * c.R * c.R - c.Q * c.Q)) {
      out.push_back({fp, (c.R - c.P * fp) / c.Q});
    }
  } else if (c.P != 0.0) {
    for (double gp : real_roots(lead, -2.0 * c.R * c.Q, c.R * c.R - c.P * c.P)) {
      out.push_back({(c.R - c.Q * gp) / c.P, gp});
    }
  }
  std::sort(out.begin(), out.end(), [](const State<2>& a, const State<2>& b) { return a[0] > b[0]; });
  return out;
}

UnitSpeedSystem make_unit_speed_system(const FamilyDescriptor& desc) {
  const double al = desc.alpha, be = desc.beta;
  const double a2 = al * al, b2 = be * be;
  UnitSpeedSystem sys;
  switch (desc.id) {
    case FamilyCase::FlatEllI:
    case FamilyCase::FlatHypI: {
      const bool ell = desc.id == FamilyCase::FlatEllI;
      const double a = desc.param("a"), c = desc.param("c");
      const double aa = a * a;
      sys.s = ell ? -1 : +1;
      const double pf = ell ? -a2 : a2;
      sys.coeffs = [=](double u, double f, double g) {
        return LinearConstraint{pf * f, b2 * g, aa * (u + c)};
      };
      sys.rates = [=](double, double, double, double fp, double gp) {
        return LinearConstraint{pf * fp, b2 * gp, aa};
      };
      sys.residual = [=](double u, double f, double g) {
        return b2 * g * g + pf * f * f - aa * (u + c) * (u + c);
      };
      return sys;
    }
    case FamilyCase::FncEllII:
    case FamilyCase::FncHypII: {
      const bool ell = desc.id == FamilyCase::FncEllII;
      const double C = desc.param("C");
      sys.s = ell ? -1 : +1;
      const double qs = ell ? -1.0 : 1.0;  // Q = -g (elliptic), +g (hyperbolic)
      const double wf = ell ? -a2 : a2;    // W = b2 g^2 + wf f^2
      auto weight = [=](double f, double g) {
        const double w = b2 * g * g + wf * f * f;
        if (!(w > 0.0)) throw NoRealRootError("constrained meridian left the region G < 0");
        return w;
      };
      sys.coeffs = [=](double, double f, double g) {
        return LinearConstraint{f, qs * g, C * std::sqrt(weight(f, g))};
      };
      sys.rates = [=](double, double f, double g, double fp, double gp) {
        const double w = weight(f, g);
        return LinearConstraint{fp, qs * gp, C * (b2 * g * gp + wf * f * fp) / std::sqrt(w)};
      };
      return sys;
    }
    case FamilyCase::MinHypIII: {
      const double c = desc.param("c");
      sys.s = +1;
      auto angle = [=](double f, double g) {
        if (f == 0.0 && g == 0.0) throw NoRealRootError("meridian passed through the origin");
        return c - std::atan2(f, g);
      };
      sys.coeffs = [=](double, double f, double g) {
        const double th = angle(f, g);
        return LinearConstraint{std::cos(th), -std::sin(th), 0.0};
      };
      sys.rates = [=](double, double f, double g, double fp, double gp) {
        const double th = angle(f, g);
        const double dphi = (g * fp - f * gp) / (f * f + g * g);
        return LinearConstraint{std::sin(th) * dphi, std::cos(th) * dphi, 0.0};
      };
      sys.initial_hint = [=](double, double f, double g) {
        const double th = angle(f, g);
        return State<2>{std::sin(th), std::cos(th)};
      };
      return sys;
    }
    default:
      throw ParamError(std::string("family '") + std::string(to_string(desc.id)) +
                       "' is not a constrained family");
  }
}

State<2> nearest_root(const UnitSpeedSystem& sys, double u, const State<2>& y,
                      const State<2>& hint) {
  const auto roots = unit_speed_roots(sys.coeffs(u, y[0], y[1]), sys.s);
  if (roots.empty()) {
    throw NoRealRootError("no real velocity at u = " + std::to_string(u) +
                          " (family left its real branch)");
  }
  const State<2>* best = &roots.front();
  double best_d = INFINITY;
  for (const auto& r : roots) {
    const double d = std::hypot(r[0] - hint[0], r[1] - hint[1]);
    if (d < best_d) {
      best_d = d;
      best = &r;
    }
  }
  return *best;
}

State<2> second_derivatives(const UnitSpeedSystem& sys, double u, const State<2>& y,
                            const State<2>& dy) {
  const LinearConstraint c = sys.coeffs(u, y[0], y[1]);
  const LinearConstraint r = sys.rates(u, y[0], y[1], dy[0], dy[1]);
  const double s = static_cast<double>(sys.s);
  // [ f'   s g' ] [f'']   [ 0                      ]
  // [ P    Q    ] [g''] = [ R' - P' f' - Q' g'     ]
  const double rhs = r.R - r.P * dy[0] - r.Q * dy[1];
  const double det = dy[0] * c.Q - s * dy[1] * c.P;
  const double scale = (std::abs(dy[0]) + std::abs(dy[1])) * (std::abs(c.P) + std::abs(c.Q));
  if (!(std::abs(det) > 1e-13 * scale)) {
    throw NoRealRootError("double root of the velocity system at u = " + std::to_string(u));
  }
  return {-s * dy[1] * rhs / det, dy[0] * rhs / det};
}

double SampledMeridian::max_constraint_residual() const {
  double m = 0.0;
  for (double r : constraint_residual) m = std::max(m, std::abs(r));
  return m;
}

double SampledMeridian::max_speed_residual() const {
  double m = 0.0;
  for (double r : speed_residual) m = std::max(m, r);
  return m;
}

SampledMeridian integrate_constrained(const FamilyDescriptor& desc, double u0,
                                      const State<2>& state0, Interval span, double tol) {
  if (!span.finite() || !(span.hi > span.lo)) {
    throw ParamError("integrated families need a finite parameter interval with lo < hi");
  }
  if (u0 != span.lo) throw ParamError("integration starts at the lower end of the interval");
  if (!(tol > 0.0)) throw ParamError("integration tolerance must be positive");

  const UnitSpeedSystem sys = make_unit_speed_system(desc);
  if (sys.residual) {
    const double r0 = sys.residual(u0, state0[0], state0[1]);
    if (!(std::abs(r0) <= tol)) {
      throw ParamError("initial state violates the defining relation (residual " +
                       std::to_string(r0) + ")");
    }
  }

  State<2> hint0;
  if (sys.initial_hint) {
    hint0 = sys.initial_hint(u0, state0[0], state0[1]);
  } else {
    const auto roots = unit_speed_roots(sys.coeffs(u0, state0[0], state0[1]), sys.s);
    if (roots.empty()) throw NoRealRootError("no real velocity at the initial state");
    hint0 = desc.branch >= 0 ? roots.front() : roots.back();
  }

  const double sd = static_cast<double>(sys.s);
  double h = span.length() / kDefaultDivisions;
  SampledMeridian out;
  out.tol = tol;
  double worst = INFINITY;
  for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
    State<2> hint = hint0;
    auto field = [&sys, &hint](double u, const State<2>& y) {
      hint = nearest_root(sys, u, y, hint);
      return hint;
    };
    Trajectory<2> traj = rk4_integrate(field, state0, span.lo, span.hi, h);

    std::vector<double> cres, sres;
    cres.reserve(traj.size());
    sres.reserve(traj.size());
    for (const auto& k : traj.knots()) {
      cres.push_back(sys.residual ? sys.residual(k.t, k.y[0], k.y[1]) : 0.0);
      sres.push_back(std::abs(k.dy[0] * k.dy[0] + sd * k.dy[1] * k.dy[1] - 1.0));
    }
    out.trajectory = std::move(traj);
    out.constraint_residual = std::move(cres);
    out.speed_residual = std::move(sres);
    out.halvings = attempt;
    worst = std::max(out.max_constraint_residual(), out.trajectory.max_error());
    if (worst <= tol) break;
    h *= 0.5;
  }
  if (worst > 10.0 * tol) {
    throw ConstraintDriftError("constraint residual " + std::to_string(worst) +
                               " exceeds 10*tol after " + std::to_string(kMaxHalvings) +
                               " step halvings");
  }
  return out;
}

}  // namespace grs
