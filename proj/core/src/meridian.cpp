#include "grs/meridian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>

#include "grs/constrained.hpp"
#include "grs/errors.hpp"
#include "grs/expr.hpp"

namespace grs {

std::string_view to_string(SurfaceKind k) {
  return k == SurfaceKind::Elliptic ? "elliptic" : "hyperbolic";
}

SurfaceKind surface_kind_from_name(std::string_view name) {
  if (name == "elliptic" || name == "ell") return SurfaceKind::Elliptic;
  if (name == "hyperbolic" || name == "hyp") return SurfaceKind::Hyperbolic;
  throw ParamError("unknown surface kind '" + std::string(name) + "'");
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::Minimal: return "minimal";
    case Property::ParallelNormalizedH: return "parallel-normalized-H";
    case Property::Flat: return "flat";
    case Property::FlatNormalConnection: return "flat-normal-connection";
    case Property::None: return "none";
  }
  return "?";
}

const std::vector<CaseInfo>& family_catalog() {
  using K = SurfaceKind;
  using P = Property;
  using F = FamilyCase;
  static const std::vector<CaseInfo> kCatalog = {
      {F::MinEllI, "min-ell-i", K::Elliptic, P::Minimal, false, "c",
       "c != 0, alpha != beta", "g = u", "f = c g^(+-alpha/beta)"},
      {F::MinEllII, "min-ell-ii", K::Elliptic, P::Minimal, false, "A,C",
       "A > 0, alpha != beta", "theta: g = sqrt(A)/beta sin(theta)",
       "asin(alpha f/sqrt(A)) = +-(alpha/beta) asin(beta g/sqrt(A)) + C"},
      {F::MinEllIII, "min-ell-iii", K::Elliptic, P::Minimal, false, "a,b",
       "a != 0, alpha == beta (admissible only for a < 0 < b)", "d = f - g",
       "(f + g)^2 = a (f - g)^2 + b"},
      {F::MinHypI, "min-hyp-i", K::Hyperbolic, P::Minimal, false, "c",
       "c != 0, alpha != beta", "g = u", "f = c g^(-+alpha/beta)"},
      {F::MinHypII, "min-hyp-ii", K::Hyperbolic, P::Minimal, false, "A,C",
       "A != 0, C > 0 when A < 0, C != 0, alpha != beta", "psi: beta g = sqrt|A| sinh/cosh(psi)",
       "alpha f + sqrt(alpha^2 f^2 - A) = C (beta g + sqrt(beta^2 g^2 + A))^(+-alpha/beta)"},
      {F::MinHypIII, "min-hyp-iii", K::Hyperbolic, P::Minimal, true, "c,f0,g0",
       "alpha == beta, (f0, g0) != 0", "arc length",
       "atan(f'/g') = -atan(f/g) + c"},
      {F::PnmcvEll, "pnmcv-ell", K::Elliptic, P::ParallelNormalizedH, false, "C",
       "C != 0", "g = u", "f = +-sqrt(u^2 - C^2)"},
      {F::PnmcvHyp, "pnmcv-hyp", K::Hyperbolic, P::ParallelNormalizedH, false, "C",
       "C != 0", "g = u", "f = +-sqrt(C^2 - u^2)"},
      {F::FlatEllI, "flat-ell-i", K::Elliptic, P::Flat, true, "a,c,f0",
       "a != 0", "arc length (f'^2 - g'^2 = 1)",
       "beta^2 g^2 - alpha^2 f^2 = a^2 (u + c)^2"},
      {F::FlatEllII, "flat-ell-ii", K::Elliptic, P::Flat, false, "C",
       "C < 0", "t: alpha f = sqrt(-C) sinh t", "alpha^2 f^2 - beta^2 g^2 = C"},
      {F::FlatHypI, "flat-hyp-i", K::Hyperbolic, P::Flat, true, "a,c,f0",
       "a != 0, a^2 (u0 + c)^2 >= alpha^2 f0^2", "arc length (f'^2 + g'^2 = 1)",
       "alpha^2 f^2 + beta^2 g^2 = a^2 (u + c)^2"},
      {F::FlatHypII, "flat-hyp-ii", K::Hyperbolic, P::Flat, false, "C",
       "C > 0", "t: alpha f = sqrt(C) cos t", "alpha^2 f^2 + beta^2 g^2 = C"},
      {F::FncEllI, "fnc-ell-i", K::Elliptic, P::FlatNormalConnection, false, "c",
       "1 < c^2 < beta^2/alpha^2", "g = u", "f = c g"},
      {F::FncEllII, "fnc-ell-ii", K::Elliptic, P::FlatNormalConnection, true, "C,f0,g0",
       "C != 0, beta^2 g0^2 > alpha^2 f0^2", "arc length (f'^2 - g'^2 = 1)",
       "(f f' - g g') / (sqrt(f'^2 - g'^2) sqrt(beta^2 g^2 - alpha^2 f^2)) = C"},
      {F::FncHypI, "fnc-hyp-i", K::Hyperbolic, P::FlatNormalConnection, false, "c",
       "c != 0, alpha != beta", "g = u", "f = c g"},
      {F::FncHypII, "fnc-hyp-ii", K::Hyperbolic, P::FlatNormalConnection, true, "C,f0,g0",
       "C != 0, (f0, g0) != 0", "arc length (f'^2 + g'^2 = 1)",
       "(f f' + g g') / (sqrt(f'^2 + g'^2) sqrt(alpha^2 f^2 + beta^2 g^2)) = C"},
      {F::Custom, "custom", K::Elliptic, P::None, false, "",
       "kind, f(u), g(u) expressions", "u", "user supplied"},
  };
  return kCatalog;
}

const CaseInfo& case_info(FamilyCase id) {
  for (const auto& c : family_catalog()) {
    if (c.id == id) return c;
  }
  throw ParamError("unknown family case");
}

std::string_view to_string(FamilyCase id) { return case_info(id).name; }

FamilyCase family_case_from_name(std::string_view name) {
  for (const auto& c : family_catalog()) {
    if (c.name == name) return c.id;
  }
  throw ParamError("unknown family '" + std::string(name) + "'");
}

double FamilyDescriptor::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) {
    throw ParamError("family '" + std::string(to_string(id)) + "' requires parameter '" + name +
                     "'");
  }
  if (!std::isfinite(it->second)) throw ParamError("parameter '" + name + "' is not finite");
  return it->second;
}

double FamilyDescriptor::param_or(const std::string& name, double fallback) const {
  return params.contains(name) ? param(name) : fallback;
}

SurfaceKind FamilyDescriptor::kind() const {
  return id == FamilyCase::Custom ? custom_kind : case_info(id).kind;
}

namespace detail {

struct MeridianImpl {
  FamilyDescriptor desc;
  std::function<MeridianJet(const Jet2&)> closed;

  // integrated families
  std::optional<UnitSpeedSystem> system;
  std::once_flag once;
  std::unique_ptr<SampledMeridian> sampled;

  const SampledMeridian& samples() {
    std::call_once(once, [this] {
      sampled = std::make_unique<SampledMeridian>(
          integrate_constrained(desc, desc.interval.lo, initial_state(desc), desc.interval,
                                desc.tol));
    });
    return *sampled;
  }
};

}  // namespace detail

namespace {

void require(bool ok, const FamilyDescriptor& d, const std::string& what) {
  if (!ok) throw ParamError(std::string(to_string(d.id)) + ": " + what);
}

void validate_common(const FamilyDescriptor& d) {
  require(std::isfinite(d.alpha) && d.alpha > 0.0, d, "alpha must be positive");
  require(std::isfinite(d.beta) && d.beta > 0.0, d, "beta must be positive");
  require(d.sign == 1 || d.sign == -1, d, "sign must be +1 or -1");
  require(d.branch == 1 || d.branch == -1, d, "branch must be +1 or -1");
  require(!std::isnan(d.interval.lo) && !std::isnan(d.interval.hi) &&
              d.interval.lo < d.interval.hi,
          d, "parameter interval must satisfy lo < hi");
  const CaseInfo& info = case_info(d.id);
  if (info.integrated) {
    require(d.interval.finite(), d, "integrated families need a finite parameter interval");
    require(d.tol > 0.0, d, "tol must be positive");
  }
}

std::function<MeridianJet(const Jet2&)> closed_form(const FamilyDescriptor& d) {
  const double al = d.alpha, be = d.beta;
  const double sg = static_cast<double>(d.sign);
  const double k = al / be;
  switch (d.id) {
    case FamilyCase::MinEllI:
    case FamilyCase::MinHypI: {
      const double c = d.param("c");
      require(c != 0.0, d, "c must be nonzero");
      require(al != be, d, "alpha must differ from beta");
      // elliptic: exponent +-alpha/beta ; hyperbolic: -+alpha/beta
      const double p = d.id == FamilyCase::MinEllI ? sg * k : -sg * k;
      return [=](const Jet2& u) { return MeridianJet{c * pow(u, p), u}; };
    }
    case FamilyCase::MinEllII: {
      const double A = d.param("A"), C = d.param("C");
      require(A > 0.0, d, "A must be positive");
      require(al != be, d, "alpha must differ from beta");
      const double r = std::sqrt(A);
      return [=](const Jet2& th) {
        return MeridianJet{(r / al) * sin(sg * k * th + C), (r / be) * sin(th)};
      };
    }
    case FamilyCase::MinEllIII: {
      const double a = d.param("a"), b = d.param("b");
      require(a != 0.0, d, "a must be nonzero");
      require(al == be, d, "requires alpha == beta");
      return [=](const Jet2& dd) {
        const Jet2 s = sg * sqrt(a * dd * dd + b);
        return MeridianJet{0.5 * (s + dd), 0.5 * (s - dd)};
      };
    }
    case FamilyCase::MinHypII: {
      const double A = d.param("A"), C = d.param("C");
      require(A != 0.0 && C != 0.0, d, "A and C must be nonzero");
      require(al != be, d, "alpha must differ from beta");
      require(A > 0.0 || C > 0.0, d, "C must be positive when A < 0");
      const double r = std::sqrt(std::abs(A));
      const double c0 = std::log(std::abs(C)) - 0.5 * (1.0 - sg * k) * std::log(std::abs(A));
      const double fs = C > 0.0 ? 1.0 : -1.0;
      if (A > 0.0) {
        return [=](const Jet2& psi) {
          return MeridianJet{fs * (r / al) * cosh(sg * k * psi + c0), (r / be) * sinh(psi)};
        };
      }
      return [=](const Jet2& psi) {
        return MeridianJet{(r / al) * sinh(sg * k * psi + c0), (r / be) * cosh(psi)};
      };
    }
    case FamilyCase::PnmcvEll:
    case FamilyCase::PnmcvHyp: {
      const double C = d.param("C");
      require(C != 0.0, d, "C must be nonzero");
      const double C2 = C * C;
      if (d.id == FamilyCase::PnmcvEll) {
        return [=](const Jet2& u) { return MeridianJet{sg * sqrt(u * u - C2), u}; };
      }
      return [=](const Jet2& u) { return MeridianJet{sg * sqrt(C2 - u * u), u}; };
    }
    case FamilyCase::FlatEllII: {
      const double C = d.param("C");
      require(C < 0.0, d, "C must be negative");
      const double r = std::sqrt(-C);
      return [=](const Jet2& t) { return MeridianJet{(r / al) * sinh(t), sg * (r / be) * cosh(t)}; };
    }
    case FamilyCase::FlatHypII: {
      const double C = d.param("C");
      require(C > 0.0, d, "C must be positive");
      const double r = std::sqrt(C);
      return [=](const Jet2& t) { return MeridianJet{(r / al) * cos(t), sg * (r / be) * sin(t)}; };
    }
    case FamilyCase::FncEllI: {
      const double c = d.param("c");
      require(c * c > 1.0 && c * c < (be * be) / (al * al), d,
              "requires 1 < c^2 < beta^2/alpha^2");
      return [=](const Jet2& u) { return MeridianJet{c * u, u}; };
    }
    case FamilyCase::FncHypI: {
      const double c = d.param("c");
      require(c != 0.0, d, "c must be nonzero");
      require(al != be, d, "alpha must differ from beta");
      return [=](const Jet2& u) { return MeridianJet{c * u, u}; };
    }
    case FamilyCase::Custom: {
      require(!d.f_expr.empty() && !d.g_expr.empty(), d, "custom families need f and g");
      Expr f = Expr::parse(d.f_expr);
      Expr g = Expr::parse(d.g_expr);
      return [f, g](const Jet2& u) { return MeridianJet{f.eval(u), g.eval(u)}; };
    }
    default:
      throw ParamError(std::string(to_string(d.id)) + " has no closed form");
  }
}

void validate_integrated(const FamilyDescriptor& d) {
  switch (d.id) {
    case FamilyCase::FlatEllI:
    case FamilyCase::FlatHypI:
      require(d.param("a") != 0.0, d, "a must be nonzero");
      (void)d.param("c");
      (void)d.param("f0");
      break;
    case FamilyCase::FncEllII:
    case FamilyCase::FncHypII:
      require(d.param("C") != 0.0, d, "C must be nonzero");
      (void)d.param("f0");
      (void)d.param("g0");
      break;
    case FamilyCase::MinHypIII:
      require(d.alpha == d.beta, d, "requires alpha == beta");
      (void)d.param("c");
      require(d.param("f0") != 0.0 || d.param("g0") != 0.0, d, "(f0, g0) must be nonzero");
      break;
    default:
      break;
  }
  (void)initial_state(d);
}

// Admissibility of a planar meridian point without building a surface.
bool admissible_jet(SurfaceKind kind, double al, double be, const MeridianJet& m, double eps) {
  const double f = m.f.val, g = m.g.val, fp = m.f.d1, gp = m.g.d1;
  if (kind == SurfaceKind::Elliptic) {
    return fp * fp - gp * gp > eps && al * al * f * f - be * be * g * g < -eps;
  }
  return fp * fp + gp * gp > eps && -(al * al * f * f + be * be * g * g) < -eps;
}

}  // namespace

State<2> initial_state(const FamilyDescriptor& d) {
  const double al = d.alpha, be = d.beta;
  const double u0 = d.interval.lo;
  const double sg = static_cast<double>(d.sign);
  switch (d.id) {
    case FamilyCase::FlatEllI:
    case FamilyCase::FlatHypI: {
      const double a = d.param("a"), c = d.param("c"), f0 = d.param("f0");
      const double target = a * a * (u0 + c) * (u0 + c);
      const double rest = d.id == FamilyCase::FlatEllI ? target + al * al * f0 * f0
                                                        : target - al * al * f0 * f0;
      require(rest >= 0.0, d, "no real g0 satisfies the relation at the interval start");
      return {f0, sg * std::sqrt(rest) / be};
    }
    case FamilyCase::FncEllII: {
      const double f0 = d.param("f0"), g0 = d.param("g0");
      require(be * be * g0 * g0 > al * al * f0 * f0, d, "initial point must satisfy G < 0");
      return {f0, g0};
    }
    case FamilyCase::FncHypII:
    case FamilyCase::MinHypIII: {
      const double f0 = d.param("f0"), g0 = d.param("g0");
      require(f0 != 0.0 || g0 != 0.0, d, "initial point must differ from the origin");
      return {f0, g0};
    }
    default:
      throw ParamError(std::string(to_string(d.id)) + " is not an integrated family");
  }
}

const FamilyDescriptor& MeridianFamily::descriptor() const { return impl_->desc; }
SurfaceKind MeridianFamily::kind() const { return impl_->desc.kind(); }
Interval MeridianFamily::domain() const { return impl_->desc.interval; }
bool MeridianFamily::integrated() const { return impl_->system.has_value(); }

const SampledMeridian* MeridianFamily::samples() const {
  if (!impl_->system) return nullptr;
  return &impl_->samples();
}

MeridianJet MeridianFamily::jet(double u) const {
  const Interval dom = domain();
  if (!dom.contains(u)) {
    std::ostringstream os;
    os << to_string(impl_->desc.id) << ": u = " << u << " outside [" << dom.lo << ", " << dom.hi
       << "]";
    throw DomainError(os.str());
  }
  if (!impl_->system) return impl_->closed(Jet2::variable(u));

  const SampledMeridian& s = impl_->samples();
  const State<2> y = hermite_eval(s.trajectory, u);
  const State<2> hint = hermite_derivative(s.trajectory, u);
  const State<2> dy = nearest_root(*impl_->system, u, y, hint);
  const State<2> dd = second_derivatives(*impl_->system, u, y, dy);
  return {Jet2{y[0], dy[0], dd[0]}, Jet2{y[1], dy[1], dd[1]}};
}

MeridianFamily build_family(const FamilyDescriptor& desc) {
  validate_common(desc);
  auto impl = std::make_shared<detail::MeridianImpl>();
  impl->desc = desc;
  if (case_info(desc.id).integrated) {
    validate_integrated(desc);
    impl->system = make_unit_speed_system(desc);
  } else {
    impl->closed = closed_form(desc);
  }
  MeridianFamily fam(std::move(impl));

  if (desc.id == FamilyCase::MinEllI) {
    fam.diagnostics_.push_back(
        "min-ell-i: f'^2 - g'^2 > 0 and alpha^2 f^2 - beta^2 g^2 < 0 reduce to "
        "c^2 g^(2 alpha/beta - 2) > beta^2/alpha^2 and < beta^2/alpha^2; the admissible "
        "domain is empty");
  }
  if (!fam.integrated() && desc.interval.finite()) {
    constexpr int kScan = 257;
    bool any = false;
    for (int i = 0; i < kScan && !any; ++i) {
      const double u = desc.interval.lo + desc.interval.length() * i / (kScan - 1);
      try {
        any = admissible_jet(desc.kind(), desc.alpha, desc.beta, fam.jet(u), 1e-10);
      } catch (const DomainError&) {
      }
    }
    if (!any) {
      fam.diagnostics_.push_back("no admissible point found on the parameter interval");
    }
  }
  return fam;
}

std::optional<double> relation_residual(const FamilyDescriptor& d, double u,
                                        const MeridianJet& m) {
  const double al = d.alpha, be = d.beta, k = al / be;
  const double sg = static_cast<double>(d.sign);
  const double f = m.f.val, g = m.g.val, fp = m.f.d1, gp = m.g.d1;
  auto rel = [](double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
  };
  switch (d.id) {
    case FamilyCase::MinEllI:
      if (!(g > 0.0)) return std::nullopt;
      return rel(f, d.param("c") * std::pow(g, sg * k));
    case FamilyCase::MinHypI:
      if (!(g > 0.0)) return std::nullopt;
      return rel(f, d.param("c") * std::pow(g, -sg * k));
    case FamilyCase::MinEllII: {
      const double r = std::sqrt(d.param("A"));
      const double th = u;
      if (std::abs(th) > std::numbers::pi / 2) return std::nullopt;
      const double lhs = std::asin(std::clamp(al * f / r, -1.0, 1.0));
      const double w = sg * k * std::asin(std::clamp(be * g / r, -1.0, 1.0)) + d.param("C");
      if (std::abs(w) > std::numbers::pi / 2) return std::nullopt;
      return rel(lhs, w);
    }
    case FamilyCase::MinEllIII: {
      const double a = d.param("a"), b = d.param("b");
      return rel((f + g) * (f + g), a * (f - g) * (f - g) + b);
    }
    case FamilyCase::MinHypII: {
      const double A = d.param("A"), C = d.param("C");
      const double q1 = al * al * f * f - A, q2 = be * be * g * g + A;
      if (q1 < 0.0 || q2 < 0.0) return std::nullopt;
      const double lhs = al * f + std::sqrt(q1);
      const double base = be * g + std::sqrt(q2);
      if (!(base > 0.0) || lhs == 0.0 || (lhs > 0.0) != (C > 0.0)) return std::nullopt;
      // for A > 0 the relation holds only on the piece where sign * f' >= 0
      if (A > 0.0 && sg * fp < 0.0) return std::nullopt;
      const double rhs = C * std::pow(base, sg * k);
      const double lr = std::log(std::abs(lhs)), rr = std::log(std::abs(rhs));
      return std::abs(lr - rr) / std::max(1.0, std::abs(lr));
    }
    case FamilyCase::MinHypIII: {
      // tan(arctan(f'/g') + arctan(f/g)) = tan(c), written without divisions
      const double c = d.param("c");
      const double s1 = std::sin(std::atan2(fp, gp) + std::atan2(f, g) - c);
      return std::abs(s1);
    }
    case FamilyCase::PnmcvEll: {
      const double C = d.param("C");
      return std::max(rel(f * f, u * u - C * C), rel(g, u));
    }
    case FamilyCase::PnmcvHyp: {
      const double C = d.param("C");
      return std::max(rel(f * f, C * C - u * u), rel(g, u));
    }
    case FamilyCase::FlatEllI:
    case FamilyCase::FlatHypI: {
      const double a = d.param("a"), c = d.param("c");
      const double lhs = d.id == FamilyCase::FlatEllI ? be * be * g * g - al * al * f * f
                                                      : al * al * f * f + be * be * g * g;
      return rel(lhs, a * a * (u + c) * (u + c));
    }
    case FamilyCase::FlatEllII:
      return rel(al * al * f * f - be * be * g * g, d.param("C"));
    case FamilyCase::FlatHypII:
      return rel(al * al * f * f + be * be * g * g, d.param("C"));
    case FamilyCase::FncEllI:
    case FamilyCase::FncHypI:
      return rel(f, d.param("c") * g);
    case FamilyCase::FncEllII: {
      const double e = fp * fp - gp * gp, w = be * be * g * g - al * al * f * f;
      if (!(e > 0.0 && w > 0.0)) return std::nullopt;
      return rel((f * fp - g * gp) / (std::sqrt(e) * std::sqrt(w)), d.param("C"));
    }
    case FamilyCase::FncHypII: {
      const double e = fp * fp + gp * gp, w = al * al * f * f + be * be * g * g;
      if (!(e > 0.0 && w > 0.0)) return std::nullopt;
      return rel((f * fp + g * gp) / (std::sqrt(e) * std::sqrt(w)), d.param("C"));
    }
    case FamilyCase::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace grs
