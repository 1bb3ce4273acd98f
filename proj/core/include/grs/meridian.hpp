#pragma once

// Meridian curves (f(u), g(u)) for every case of the minimal, parallel
// normalized mean curvature, flat and flat-normal-connection classifications,
// plus user-supplied closed forms.

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grs/jet.hpp"
#include "grs/odeint.hpp"

namespace grs {

enum class SurfaceKind { Elliptic, Hyperbolic };

std::string_view to_string(SurfaceKind k);
SurfaceKind surface_kind_from_name(std::string_view name);

enum class FamilyCase {
  MinEllI,
  MinEllII,
  MinEllIII,
  MinHypI,
  MinHypII,
  MinHypIII,
  PnmcvEll,
  PnmcvHyp,
  FlatEllI,
  FlatEllII,
  FlatHypI,
  FlatHypII,
  FncEllI,
  FncEllII,
  FncHypI,
  FncHypII,
  Custom,
};

/// The geometric property a classification case is known to have.
enum class Property { Minimal, ParallelNormalizedH, Flat, FlatNormalConnection, None };

std::string_view to_string(Property p);

struct CaseInfo {
  FamilyCase id;
  std::string_view name;
  SurfaceKind kind;
  Property property;
  bool integrated;                 // realized by constrained RK4 integration
  std::string_view params;         // parameter names, comma separated
  std::string_view constraints;    // human readable
  std::string_view parameter;      // meaning of the curve parameter u
  std::string_view relation;       // defining relation of the case
};

/// The sixteen classification cases followed by `custom`.
const std::vector<CaseInfo>& family_catalog();
const CaseInfo& case_info(FamilyCase id);
std::string_view to_string(FamilyCase id);
/// Throws ParamError for unknown ids.
FamilyCase family_case_from_name(std::string_view name);

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double u) const { return u >= lo && u <= hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct FamilyDescriptor {
  FamilyCase id = FamilyCase::Custom;
  std::map<std::string, double> params;  // named as in the case relation: c, C, A, a, b, f0, g0
  double alpha = 1.0;
  double beta = 1.0;
  int sign = +1;    // the explicit +/- branch of the case formula
  int branch = +1;  // initial root of constrained families: +1 larger f', -1 smaller
  Interval interval;  // parameter interval; integrated families need it finite
  double tol = 1e-10;  // constraint tolerance for integrated families

  // custom families only
  SurfaceKind custom_kind = SurfaceKind::Elliptic;
  std::string f_expr;
  std::string g_expr;

  /// Throws ParamError when missing or non-finite.
  double param(const std::string& name) const;
  double param_or(const std::string& name, double fallback) const;
  SurfaceKind kind() const;
};

struct MeridianJet {
  Jet2 f;
  Jet2 g;
};

/// Knots of an integrated meridian with per-knot diagnostics.
struct SampledMeridian {
  Trajectory<2> trajectory;            // state (f, g); derivative (f', g')
  std::vector<double> constraint_residual;  // algebraic relation, 0 when the case has none
  std::vector<double> speed_residual;       // |f'^2 -+ g'^2 - 1|
  double tol = 0.0;
  int halvings = 0;

  double max_constraint_residual() const;
  double max_speed_residual() const;
};

namespace detail {
struct MeridianImpl;
}

class MeridianFamily {
 public:
  const FamilyDescriptor& descriptor() const;
  SurfaceKind kind() const;
  Interval domain() const;
  bool integrated() const;
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  /// 2-jets of f and g at u. DomainError outside the interval or at branch points.
  MeridianJet jet(double u) const;

  /// Integrated knots (runs the integration on first use); nullptr for closed forms.
  const SampledMeridian* samples() const;

 private:
  friend MeridianFamily build_family(const FamilyDescriptor& desc);
  explicit MeridianFamily(std::shared_ptr<detail::MeridianImpl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<detail::MeridianImpl> impl_;
  std::vector<std::string> diagnostics_;
};

/// Validates the case constraints (ParamError) and returns an evaluator.
MeridianFamily build_family(const FamilyDescriptor& desc);

inline MeridianJet meridian_jet(const MeridianFamily& fam, double u) { return fam.jet(u); }

/// Integrates a constrained case (flat-*-i, fnc-*-ii, min-hyp-iii) from state0 at u0
/// over span, halving the step from span/1024 until the residual is <= tol.
SampledMeridian integrate_constrained(const FamilyDescriptor& desc, double u0,
                                      const State<2>& state0, Interval span, double tol);

/// Initial state (f0, g0) at the start of the interval, derived from the descriptor.
State<2> initial_state(const FamilyDescriptor& desc);

/// Residual of the defining relation of the case at u (scaled to O(1) quantities).
/// nullopt where the relation is stated on a different branch than the one sampled
/// (principal arcsin values, the sign of log arguments).
std::optional<double> relation_residual(const FamilyDescriptor& desc, double u,
                                        const MeridianJet& m);

}  // namespace grs
