#include "grs/surface.hpp"

#include <cmath>
#include <sstream>

#include "grs/errors.hpp"

namespace grs {

namespace {

struct Trig {
  double ca, sa, cb, sb;  // cos/sin (elliptic) or cosh/sinh (hyperbolic) of av and bv
};

Trig trig(const SurfaceSpec& s, double v) {
  const double a = s.alpha * v, b = s.beta * v;
  if (s.kind == SurfaceKind::Elliptic) {
    return {std::cos(a), std::sin(a), std::cos(b), std::sin(b)};
  }
  return {std::cosh(a), std::sinh(a), std::cosh(b), std::sinh(b)};
}

// Meridian quantities shared by every closed-form expression below.
struct Local {
  double f, fp, fpp, g, gp, gpp;
  double E;  // f'^2 -+ g'^2
  double W;  // -G = b^2 g^2 -+ a^2 f^2 (elliptic: b^2g^2 - a^2f^2)
  bool admissible;
};

Local local(const SurfaceSpec& s, const MeridianJet& m, double eps) {
  Local l{m.f.val, m.f.d1, m.f.d2, m.g.val, m.g.d1, m.g.d2, 0.0, 0.0, false};
  const double a2 = s.alpha * s.alpha, b2 = s.beta * s.beta;
  if (s.kind == SurfaceKind::Elliptic) {
    l.E = l.fp * l.fp - l.gp * l.gp;
    l.W = b2 * l.g * l.g - a2 * l.f * l.f;
  } else {
    l.E = l.fp * l.fp + l.gp * l.gp;
    l.W = a2 * l.f * l.f + b2 * l.g * l.g;
  }
  l.admissible = l.E > eps && -l.W < -eps;
  return l;
}

[[noreturn]] void throw_inadmissible(double u, const Local& l) {
  std::ostringstream os;
  os << "inadmissible point u = " << u << " (E = " << l.E << ", G = " << -l.W << ")";
  throw InadmissiblePointError(os.str());
}

Local admissible_local(const SurfaceSpec& s, double u, double eps) {
  const Local l = local(s, s.meridian.jet(u), eps);
  if (!l.admissible) throw_inadmissible(u, l);
  return l;
}

GeoFns geo_from_local(const SurfaceSpec& s, const Local& l) {
  const double al = s.alpha, be = s.beta;
  const double a2 = al * al, b2 = be * be;
  const double rE = std::sqrt(l.E);
  const double d = rE * l.W;
  GeoFns r;
  if (s.kind == SurfaceKind::Elliptic) {
    r.nu1 = (l.gp * l.fpp - l.fp * l.gpp) / (l.E * rE);
    r.nu2 = (b2 * l.g * l.fp - a2 * l.f * l.gp) / d;
    r.mu = al * be * (l.f * l.gp - l.g * l.fp) / d;
    r.gamma2 = (a2 * l.f * l.fp - b2 * l.g * l.gp) / d;
    r.beta2 = al * be * (l.f * l.fp - l.g * l.gp) / d;
  } else {
    r.nu1 = (l.fpp * l.gp - l.fp * l.gpp) / (l.E * rE);
    r.nu2 = (a2 * l.f * l.gp - b2 * l.g * l.fp) / d;
    r.mu = al * be * (l.f * l.gp - l.fp * l.g) / d;
    r.gamma2 = -(a2 * l.f * l.fp + b2 * l.g * l.gp) / d;
    r.beta2 = -al * be * (l.f * l.fp + l.g * l.gp) / d;
  }
  return r;
}

double h_numerator_local(const SurfaceSpec& s, const Local& l) {
  const double a2 = s.alpha * s.alpha, b2 = s.beta * s.beta;
  if (s.kind == SurfaceKind::Elliptic) {
    return l.E * (b2 * l.g * l.fp - a2 * l.f * l.gp) - l.W * (l.fpp * l.gp - l.fp * l.gpp);
  }
  return l.E * (b2 * l.fp * l.g - a2 * l.f * l.gp) + l.W * (l.fpp * l.gp - l.fp * l.gpp);
}

Curvatures curvatures_local(const SurfaceSpec& s, const Local& l) {
  const double al = s.alpha, be = s.beta;
  const double a2 = al * al, b2 = be * be;
  const double E = l.E, W = l.W;
  const double den = E * E * W * W;
  const double cross = l.f * l.gp - l.fp * l.g;  // f g' - f' g
  Curvatures c;
  if (s.kind == SurfaceKind::Elliptic) {
    c.K = (a2 * b2 * E * cross * cross -
           W * (b2 * l.fp * l.g - a2 * l.f * l.gp) * (l.fp * l.gpp - l.fpp * l.gp)) /
          den;
    c.kappa = -al * be * cross *
              (W * (l.gp * l.fpp - l.fp * l.gpp) + E * (b2 * l.g * l.fp - a2 * l.f * l.gp)) /
              den;
  } else {
    c.K = -(a2 * b2 * cross * cross * E +
            (a2 * l.f * l.gp - b2 * l.fp * l.g) * (l.fpp * l.gp - l.fp * l.gpp) * W) /
          den;
    c.kappa = al * be * cross *
              (W * (l.fpp * l.gp - l.fp * l.gpp) + E * (a2 * l.f * l.gp - b2 * l.g * l.fp)) /
              den;
  }
  c.h_coeff = h_numerator_local(s, l) / (2.0 * E * std::sqrt(E) * W);
  // elliptic H lies along the timelike n2, hyperbolic H along the spacelike n1
  const double nn = s.kind == SurfaceKind::Elliptic ? -1.0 : 1.0;
  c.H_norm2 = nn * c.h_coeff * c.h_coeff;
  return c;
}

Frame frame_local(const SurfaceSpec& s, const PointJets& p, const Local& l, double v) {
  const double al = s.alpha, be = s.beta;
  const double rE = std::sqrt(l.E), rG = std::sqrt(l.W);
  const Trig t = trig(s, v);
  Frame fr;
  fr.x = p.z_u / rE;
  fr.y = p.z_v / rG;
  if (s.kind == SurfaceKind::Elliptic) {
    fr.n1 = Vec4(be * l.g * t.sa, -be * l.g * t.ca, al * l.f * t.sb, -al * l.f * t.cb) / rG;
    fr.n2 = Vec4(l.gp * t.ca, l.gp * t.sa, l.fp * t.cb, l.fp * t.sb) / rE;
  } else {
    fr.n1 = Vec4(l.gp * t.ca, -l.fp * t.cb, l.gp * t.sa, -l.fp * t.sb) / rE;
    fr.n2 = Vec4(be * l.g * t.sa, -al * l.f * t.sb, be * l.g * t.ca, -al * l.f * t.cb) / rG;
  }
  return fr;
}

// Normal part of w in the plane spanned by the orthonormal n1, n2.
Vec4 normal_part(const Vec4& w, const Frame& fr) {
  return inner(w, fr.n1) / inner(fr.n1, fr.n1) * fr.n1 +
         inner(w, fr.n2) / inner(fr.n2, fr.n2) * fr.n2;
}

// M[k][j] = eta_k <sigma(e_j, e_k), xi> with eta = diag(1, -1).
Mat2 shape_matrix(const Vec4& sxx, const Vec4& sxy, const Vec4& syy, const Vec4& xi) {
  Mat2 m{};
  m[0][0] = inner(sxx, xi);
  m[0][1] = inner(sxy, xi);
  m[1][0] = -inner(sxy, xi);
  m[1][1] = -inner(syy, xi);
  return m;
}

double trace_product(const Mat2& a, const Mat2& b) {
  return a[0][0] * b[0][0] + a[0][1] * b[1][0] + a[1][0] * b[0][1] + a[1][1] * b[1][1];
}

}  // namespace

SurfaceSpec build_surface(const FamilyDescriptor& desc) {
  MeridianFamily fam = build_family(desc);
  return SurfaceSpec{desc.kind(), desc.alpha, desc.beta, std::move(fam)};
}

PointJets position_jets(const SurfaceSpec& s, const MeridianJet& m, double v) {
  const double al = s.alpha, be = s.beta;
  const double f = m.f.val, fp = m.f.d1, fpp = m.f.d2;
  const double g = m.g.val, gp = m.g.d1, gpp = m.g.d2;
  const Trig t = trig(s, v);
  PointJets p;
  if (s.kind == SurfaceKind::Elliptic) {
    p.z = {f * t.ca, f * t.sa, g * t.cb, g * t.sb};
    p.z_u = {fp * t.ca, fp * t.sa, gp * t.cb, gp * t.sb};
    p.z_uu = {fpp * t.ca, fpp * t.sa, gpp * t.cb, gpp * t.sb};
    p.z_v = {-al * f * t.sa, al * f * t.ca, -be * g * t.sb, be * g * t.cb};
    p.z_uv = {-al * fp * t.sa, al * fp * t.ca, -be * gp * t.sb, be * gp * t.cb};
    p.z_vv = {-al * al * f * t.ca, -al * al * f * t.sa, -be * be * g * t.cb, -be * be * g * t.sb};
  } else {
    p.z = {f * t.ca, g * t.cb, f * t.sa, g * t.sb};
    p.z_u = {fp * t.ca, gp * t.cb, fp * t.sa, gp * t.sb};
    p.z_uu = {fpp * t.ca, gpp * t.cb, fpp * t.sa, gpp * t.sb};
    p.z_v = {al * f * t.sa, be * g * t.sb, al * f * t.ca, be * g * t.cb};
    p.z_uv = {al * fp * t.sa, be * gp * t.sb, al * fp * t.ca, be * gp * t.cb};
    p.z_vv = {al * al * f * t.ca, be * be * g * t.cb, al * al * f * t.sa, be * be * g * t.sb};
  }
  return p;
}

PointJets position_jets(const SurfaceSpec& s, double u, double v) {
  return position_jets(s, s.meridian.jet(u), v);
}

FirstFundamental first_fundamental(const SurfaceSpec& s, double u, double v, double eps) {
  const PointJets p = position_jets(s, u, v);
  FirstFundamental r;
  r.E = inner(p.z_u, p.z_u);
  r.F = inner(p.z_u, p.z_v);
  r.G = inner(p.z_v, p.z_v);
  r.admissible = r.E > eps && r.G < -eps;
  return r;
}

FirstFundamental first_fundamental(const SurfaceSpec& s, const MeridianJet& m, double eps) {
  const Local l = local(s, m, eps);
  return {l.E, 0.0, -l.W, l.admissible};
}

Frame frames(const SurfaceSpec& s, double u, double v, double eps) {
  const MeridianJet m = s.meridian.jet(u);
  const Local l = local(s, m, eps);
  if (!l.admissible) throw_inadmissible(u, l);
  return frame_local(s, position_jets(s, m, v), l, v);
}

std::array<Vec4, 2> normals_dv(const SurfaceSpec& s, double u, double v, double eps) {
  const Local l = admissible_local(s, u, eps);
  const double al = s.alpha, be = s.beta, ab = al * be;
  const double rE = std::sqrt(l.E), rG = std::sqrt(l.W);
  const Trig t = trig(s, v);
  if (s.kind == SurfaceKind::Elliptic) {
    return {Vec4(ab * l.g * t.ca, ab * l.g * t.sa, ab * l.f * t.cb, ab * l.f * t.sb) / rG,
            Vec4(-al * l.gp * t.sa, al * l.gp * t.ca, -be * l.fp * t.sb, be * l.fp * t.cb) / rE};
  }
  return {Vec4(al * l.gp * t.sa, -be * l.fp * t.sb, al * l.gp * t.ca, -be * l.fp * t.cb) / rE,
          Vec4(ab * l.g * t.ca, -ab * l.f * t.cb, ab * l.g * t.sa, -ab * l.f * t.sb) / rG};
}

GeoFns geometric_functions(const SurfaceSpec& s, double u, double eps) {
  return geo_from_local(s, admissible_local(s, u, eps));
}

SecondFundamental second_fundamental(const SurfaceSpec& s, double u, double /*v*/, double eps) {
  const GeoFns q = geometric_functions(s, u, eps);
  SecondFundamental r;
  if (s.kind == SurfaceKind::Elliptic) {
    r.xx = {0.0, -q.nu1};
    r.xy = {q.mu, 0.0};
    r.yy = {0.0, -q.nu2};
  } else {
    r.xx = {q.nu1, 0.0};
    r.xy = {0.0, -q.mu};
    r.yy = {q.nu2, 0.0};
  }
  return r;
}

std::array<Vec4, 3> second_fundamental_projected(const SurfaceSpec& s, double u, double v,
                                                 double eps) {
  const MeridianJet m = s.meridian.jet(u);
  const Local l = local(s, m, eps);
  if (!l.admissible) throw_inadmissible(u, l);
  const PointJets p = position_jets(s, m, v);
  const Frame fr = frame_local(s, p, l, v);
  const double E = inner(p.z_u, p.z_u), G = inner(p.z_v, p.z_v);
  return {normal_part(p.z_uu, fr) / E, normal_part(p.z_uv, fr) / std::sqrt(-E * G),
          normal_part(p.z_vv, fr) / -G};
}

Curvatures curvatures(const SurfaceSpec& s, double u, double eps) {
  return curvatures_local(s, admissible_local(s, u, eps));
}

double kappa_normal_curvature(const SurfaceSpec& s, double u, double eps) {
  const MeridianJet m = s.meridian.jet(u);
  const Local l = local(s, m, eps);
  if (!l.admissible) throw_inadmissible(u, l);
  // d2 of the derivative jets is never read: only d1 of beta2 is needed
  const Jet2 f = m.f, g = m.g;
  const Jet2 fp{l.fp, l.fpp, 0.0}, gp{l.gp, l.gpp, 0.0};
  const double a2 = s.alpha * s.alpha, b2 = s.beta * s.beta, ab = s.alpha * s.beta;
  const bool ell = s.kind == SurfaceKind::Elliptic;
  const Jet2 E = ell ? fp * fp - gp * gp : fp * fp + gp * gp;
  const Jet2 W = ell ? b2 * g * g - a2 * f * f : a2 * f * f + b2 * g * g;
  const Jet2 num = ell ? ab * (f * fp - g * gp) : -ab * (f * fp + g * gp);
  const Jet2 beta2 = num / (sqrt(E) * W);
  const GeoFns q = geo_from_local(s, l);
  const double x_beta2 = beta2.d1 / std::sqrt(l.E);
  return ell ? x_beta2 - q.gamma2 * q.beta2 : -x_beta2 + q.gamma2 * q.beta2;
}

double h_numerator(const SurfaceSpec& s, double u) {
  return h_numerator_local(s, local(s, s.meridian.jet(u), 0.0));
}

int mean_curvature_normal(SurfaceKind kind) { return kind == SurfaceKind::Elliptic ? 2 : 1; }

ShapeOperators shape_operators(const SurfaceSpec& s, double u, double v, double eps) {
  const Local l = admissible_local(s, u, eps);
  const SecondFundamental sf = second_fundamental(s, u, v, eps);
  // coefficient pairs along (n1, n2) with <n1,n1> = 1 and <n2,n2> = -1
  const Vec4 n1(1, 0, 0, 0), n2(0, 0, 1, 0);
  auto vec = [&](const std::array<double, 2>& c) { return c[0] * n1 + c[1] * n2; };
  ShapeOperators r;
  r.A1 = shape_matrix(vec(sf.xx), vec(sf.xy), vec(sf.yy), n1);
  r.A2 = shape_matrix(vec(sf.xx), vec(sf.xy), vec(sf.yy), n2);
  r.trA1A2 = trace_product(r.A1, r.A2);
  const Curvatures c = curvatures_local(s, l);
  r.allied_coeff = 0.5 * std::sqrt(std::abs(c.H_norm2)) * r.trA1A2;
  return r;
}

Vec4 mean_curvature_vector(const SurfaceSpec& s, double u, double v, double eps) {
  const Frame fr = frames(s, u, v, eps);
  const Curvatures c = curvatures(s, u, eps);
  return c.h_coeff * (s.kind == SurfaceKind::Elliptic ? fr.n2 : fr.n1);
}

InvariantRecord invariants(const SurfaceSpec& s, double u, double eps) {
  const Local l = local(s, s.meridian.jet(u), eps);
  InvariantRecord r;
  r.u = u;
  r.E = l.E;
  r.F = 0.0;
  r.G = -l.W;
  r.admissible = l.admissible;
  if (!l.admissible) return r;
  r.geo = geo_from_local(s, l);
  const Curvatures c = curvatures_local(s, l);
  r.K = c.K;
  r.kappa = c.kappa;
  r.h_coeff = c.h_coeff;
  r.H_norm2 = c.H_norm2;
  r.trA1A2 = shape_operators(s, u, 0.0, eps).trA1A2;
  return r;
}

InvariantRecord invariants_at(const SurfaceSpec& s, double u, double v, double eps) {
  const MeridianJet m = s.meridian.jet(u);
  const Local l = local(s, m, eps);
  const PointJets p = position_jets(s, m, v);
  InvariantRecord r;
  r.u = u;
  r.E = inner(p.z_u, p.z_u);
  r.F = inner(p.z_u, p.z_v);
  r.G = inner(p.z_v, p.z_v);
  r.admissible = r.E > eps && r.G < -eps;
  if (!r.admissible || !l.admissible) {
    r.admissible = false;
    return r;
  }
  const Frame fr = frame_local(s, p, l, v);
  const Vec4 sxx = normal_part(p.z_uu, fr) / r.E;
  const Vec4 sxy = normal_part(p.z_uv, fr) / std::sqrt(-r.E * r.G);
  const Vec4 syy = normal_part(p.z_vv, fr) / -r.G;
  const auto dn = normals_dv(s, u, v, eps);
  const double rE = std::sqrt(r.E), rG = std::sqrt(-r.G);

  const bool ell = s.kind == SurfaceKind::Elliptic;
  const Vec4& nh = ell ? fr.n2 : fr.n1;  // carries sigma(x,x), sigma(y,y)
  const Vec4& nm = ell ? fr.n1 : fr.n2;  // carries sigma(x,y)
  r.geo.nu1 = inner(sxx, nh);
  r.geo.nu2 = inner(syy, nh);
  r.geo.mu = inner(sxy, nm);
  r.geo.gamma2 = inner(p.z_uv, p.z_v) / (rE * -r.G);
  r.geo.beta2 = (ell ? -1.0 : 1.0) * inner(dn[0], fr.n2) / rG;

  r.K = -(inner(sxx, syy) - inner(sxy, sxy));
  r.kappa = (ell ? -1.0 : 1.0) * r.geo.mu * (r.geo.nu1 + r.geo.nu2);
  const Vec4 H = 0.5 * (sxx - syy);
  r.h_coeff = inner(H, nh) / inner(nh, nh);
  r.H_norm2 = inner(H, H);
  r.trA1A2 = trace_product(shape_matrix(sxx, sxy, syy, fr.n1), shape_matrix(sxx, sxy, syy, fr.n2));
  return r;
}

}  // namespace grs
