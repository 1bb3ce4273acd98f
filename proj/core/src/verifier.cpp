#include "grs/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "grs/errors.hpp"

namespace grs {

CheckResult make_check(std::string name, std::string grid, double max_residual, double tolerance,
                       std::string notes) {
  CheckResult c;
  c.name = std::move(name);
  c.grid = std::move(grid);
  c.max_residual = max_residual;
  c.tolerance = tolerance;
  c.pass = max_residual <= tolerance;  // false for NaN
  c.notes = std::move(notes);
  return c;
}

CheckResult make_vacuous(std::string name, std::string grid, std::string notes) {
  CheckResult c;
  c.name = std::move(name);
  c.grid = std::move(grid);
  c.pass = true;
  c.vacuous = true;
  c.notes = std::move(notes);
  return c;
}

std::vector<std::string> VerificationReport::vacuous() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.vacuous) out.push_back(c.name);
  }
  return out;
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GRS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

Interval default_v_range(SurfaceKind kind, double alpha, double beta) {
  if (kind == SurfaceKind::Elliptic) return {0.0, 2.0 * std::numbers::pi};
  const double m = std::max(alpha, beta);
  return {-3.0 / m, 3.0 / m};
}

namespace {

// Runs fn(i) for i in [0, n) on up to worker_count() threads. The exception of
// the lowest failing index is rethrown, so failures are deterministic too.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {0.5 * (lo + hi)};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  out.back() = hi;
  return out;
}

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(1.0, scale); }

bool admissible_at(const SurfaceSpec& s, double u, double eps) {
  try {
    return first_fundamental(s, s.meridian.jet(u), eps).admissible;
  } catch (const Error&) {
    return false;
  }
}

struct FrameDerivs {
  Frame at;
  Frame du;  // d/du of x, y, n1, n2 by central differences
  Frame dv;
};

Frame combine(const Frame& a, const Frame& b, double scale) {
  return {(a.x - b.x) * scale, (a.y - b.y) * scale, (a.n1 - b.n1) * scale, (a.n2 - b.n2) * scale};
}

FrameDerivs frame_derivs(const SurfaceSpec& s, double u, double v, double h) {
  const double k = 1.0 / (2.0 * h);
  return {frames(s, u, v), combine(frames(s, u + h, v), frames(s, u - h, v), k),
          combine(frames(s, u, v + h), frames(s, u, v - h), k)};
}

std::array<Vec4, 8> fd_lhs(const FrameDerivs& d, double rE, double rG) {
  return {d.du.x / rE,  d.du.y / rE,  d.dv.x / rG,  d.dv.y / rG,
          d.du.n1 / rE, d.dv.n1 / rG, d.du.n2 / rE, d.dv.n2 / rG};
}

std::array<Vec4, 8> connection_rhs(SurfaceKind kind, const GeoFns& q, const Frame& f) {
  if (kind == SurfaceKind::Elliptic) {
    return {-q.nu1 * f.n2,
            q.mu * f.n1,
            -q.gamma2 * f.y + q.mu * f.n1,
            -q.gamma2 * f.x - q.nu2 * f.n2,
            q.mu * f.y,
            -q.mu * f.x + q.beta2 * f.n2,
            -q.nu1 * f.x,
            q.nu2 * f.y + q.beta2 * f.n1};
  }
  return {q.nu1 * f.n1,
          -q.mu * f.n2,
          -q.gamma2 * f.y - q.mu * f.n2,
          -q.gamma2 * f.x + q.nu2 * f.n1,
          -q.nu1 * f.x,
          q.nu2 * f.y - q.beta2 * f.n2,
          q.mu * f.y,
          -q.mu * f.x - q.beta2 * f.n1};
}

constexpr std::array<const char*, 8> kFdNames = {"D'_x x",  "D'_x y",  "D'_y x",  "D'_y y",
                                                 "D'_x n1", "D'_y n1", "D'_x n2", "D'_y n2"};

void require_steps(const SurfaceSpec& s, double u, double h) {
  const Interval dom = s.meridian.domain();
  if (!(h > 0.0)) throw StepError("finite-difference step must be positive");
  if (!dom.contains(u - h) || !dom.contains(u + h)) {
    std::ostringstream os;
    os << "u +- h = [" << u - h << ", " << u + h << "] leaves the parameter interval";
    throw StepError(os.str());
  }
}

std::string describe_grid(double lo, double hi, int n) {
  std::ostringstream os;
  os.precision(17);
  os << n << " pts on [" << lo << ", " << hi << "]";
  return os.str();
}

// Everything the bundle needs at one u, aggregated over the v grid.
struct PointEval {
  InvariantRecord rec;
  double orthonormality = 0.0;
  double v_independence = 0.0;
  double tr_vec = 0.0;
  double off_normal_H = 0.0;  // H component along the normal that should not carry it
  double H_norm2_vec = 0.0;   // |<H,H> (vectors) - <n_H,n_H> h^2|
  double cross_K = 0.0;
  double cross_kappa = 0.0;
  double kappa_tensor = 0.0;
  double allied = 0.0;
  std::optional<double> relation;
};

double orthonormality_residual(const Frame& f) {
  const double r[] = {inner(f.x, f.x) - 1.0, inner(f.y, f.y) + 1.0, inner(f.x, f.y),
                      inner(f.n1, f.n1) - 1.0, inner(f.n2, f.n2) + 1.0, inner(f.n1, f.n2),
                      inner(f.n1, f.x), inner(f.n1, f.y), inner(f.n2, f.x), inner(f.n2, f.y)};
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

double record_distance(const InvariantRecord& a, const InvariantRecord& b) {
  const std::pair<double, double> fields[] = {
      {a.E, b.E},           {a.F, b.F},         {a.G, b.G},
      {a.geo.nu1, b.geo.nu1}, {a.geo.nu2, b.geo.nu2}, {a.geo.mu, b.geo.mu},
      {a.geo.gamma2, b.geo.gamma2}, {a.geo.beta2, b.geo.beta2}, {a.K, b.K},
      {a.kappa, b.kappa},   {a.h_coeff, b.h_coeff}, {a.H_norm2, b.H_norm2},
      {a.trA1A2, b.trA1A2}};
  double m = 0.0;
  for (const auto& [x, y] : fields) m = std::max(m, rel(x, y, std::abs(y)));
  return m;
}

PointEval evaluate_point(const SurfaceSpec& s, const FamilyDescriptor& desc, double u,
                         const std::vector<double>& vs) {
  PointEval p;
  p.rec = invariants(s, u);
  if (!p.rec.admissible) {
    throw InadmissiblePointError("grid point u = " + std::to_string(u) + " is inadmissible");
  }
  const bool ell = s.kind == SurfaceKind::Elliptic;
  const double nn = ell ? -1.0 : 1.0;  // <n_H, n_H>
  for (double v : vs) {
    const Frame fr = frames(s, u, v);
    p.orthonormality = std::max(p.orthonormality, orthonormality_residual(fr));
    const InvariantRecord at = invariants_at(s, u, v);
    p.v_independence = std::max(p.v_independence, record_distance(at, p.rec));
    p.tr_vec = std::max(p.tr_vec, std::abs(at.trA1A2));

    const auto sig = second_fundamental_projected(s, u, v);
    const Vec4 H = 0.5 * (sig[0] - sig[2]);
    const Vec4& other = ell ? fr.n1 : fr.n2;
    p.off_normal_H = std::max(p.off_normal_H, std::abs(inner(H, other)));
    p.H_norm2_vec =
        std::max(p.H_norm2_vec, std::abs(inner(H, H) - nn * p.rec.h_coeff * p.rec.h_coeff));
  }
  const auto [ck, ckap] = cross_check(s, u);
  p.cross_K = ck.max_residual;
  p.cross_kappa = ckap.max_residual;
  const double kt = kappa_normal_curvature(s, u);
  const GeoFns& q = p.rec.geo;
  p.kappa_tensor = rel(kt, p.rec.kappa,
                       std::abs(p.rec.kappa) + std::abs(q.gamma2 * q.beta2) + std::abs(kt));
  const ShapeOperators so = shape_operators(s, u);
  p.allied = std::abs(so.allied_coeff);
  if (desc.id != FamilyCase::Custom) p.relation = relation_residual(desc, u, s.meridian.jet(u));
  return p;
}

template <class Get>
double max_over(const std::vector<PointEval>& pts, Get get) {
  double m = 0.0;
  for (const auto& p : pts) {
    const double x = get(p);
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    m = std::max(m, x);
  }
  return m;
}

std::vector<std::string> property_check_names(Property prop, bool dh) {
  switch (prop) {
    case Property::Minimal: return {"minimal_h_coeff"};
    case Property::ParallelNormalizedH: {
      std::vector<std::string> n = {"pnmcv_beta2", "pnmcv_H_norm2", "pnmcv_h_coeff",
                                    "pnmcv_h_constancy"};
      if (dh) n.push_back("pnmcv_parallel_H_fd");
      return n;
    }
    case Property::Flat: return {"flat_K", "flat_mu2_nu1nu2"};
    case Property::FlatNormalConnection: return {"fnc_kappa"};
    case Property::None: return {};
  }
  return {};
}

const std::vector<std::string> kCommonChecks = {
    "frame_orthonormality", "v_independence",   "chen_trA1A2",        "allied_coeff",
    "quasi_minimal_exclusion", "cross_check_K", "cross_check_kappa",  "kappa_curvature_tensor",
    "fd_connection",        "fd_convergence"};

}  // namespace

std::array<FdRow, 8> fd_connection_check(const SurfaceSpec& s, double u, double v, double h) {
  require_steps(s, u, h);
  const FirstFundamental ff = first_fundamental(s, s.meridian.jet(u));
  if (!ff.admissible) throw InadmissiblePointError("fd_connection_check at inadmissible u");
  const double rE = std::sqrt(ff.E), rG = std::sqrt(-ff.G);
  const GeoFns q = geometric_functions(s, u);

  const FrameDerivs d1 = frame_derivs(s, u, v, h);
  const FrameDerivs d2 = frame_derivs(s, u, v, 0.5 * h);
  const auto rhs = connection_rhs(s.kind, q, d1.at);
  const auto l1 = fd_lhs(d1, rE, rG);
  const auto l2 = fd_lhs(d2, rE, rG);

  std::array<FdRow, 8> rows;
  for (std::size_t i = 0; i < 8; ++i) {
    FdRow& r = rows[i];
    r.name = kFdNames[i];
    r.residual_h = euclid_norm(l1[i] - rhs[i]);
    r.residual_h2 = euclid_norm(l2[i] - rhs[i]);
    r.residual_richardson = euclid_norm((4.0 * l2[i] - l1[i]) / 3.0 - rhs[i]);
    r.scale = euclid_norm(l1[i]);
    r.resolved = r.residual_h > kFdResolution * std::max(1.0, r.scale);
  }
  return rows;
}

double fd_parallel_h(const SurfaceSpec& s, double u, double v, double h) {
  require_steps(s, u, h);
  const FirstFundamental ff = first_fundamental(s, s.meridian.jet(u));
  const Frame fr = frames(s, u, v);
  const double k = 1.0 / (2.0 * h);
  const Vec4 dx = (mean_curvature_vector(s, u + h, v) - mean_curvature_vector(s, u - h, v)) * k /
                  std::sqrt(ff.E);
  const Vec4 dy = (mean_curvature_vector(s, u, v + h) - mean_curvature_vector(s, u, v - h)) * k /
                  std::sqrt(-ff.G);
  return std::max({std::abs(inner(dx, fr.n1)), std::abs(inner(dx, fr.n2)),
                   std::abs(inner(dy, fr.n1)), std::abs(inner(dy, fr.n2))});
}

std::pair<CheckResult, CheckResult> cross_check(const SurfaceSpec& s, double u, double tol) {
  const Curvatures c = curvatures(s, u);
  const GeoFns q = geometric_functions(s, u);
  const auto sig = second_fundamental_projected(s, u, 0.0);
  const double K_sigma = -(inner(sig[0], sig[2]) - inner(sig[1], sig[1]));
  const double kappa_geo = (s.kind == SurfaceKind::Elliptic ? -1.0 : 1.0) * q.mu * (q.nu1 + q.nu2);
  const std::string grid = "u = " + std::to_string(u);
  std::ostringstream nk, nkap;
  nk.precision(17);
  nkap.precision(17);
  nk << "K explicit " << c.K << ", sigma route " << K_sigma;
  nkap << "kappa explicit " << c.kappa << ", -+mu(nu1+nu2) " << kappa_geo;
  return {make_check("cross_check_K", grid,
                     rel(c.K, K_sigma, q.mu * q.mu + std::abs(q.nu1 * q.nu2)), tol, nk.str()),
          make_check("cross_check_kappa", grid,
                     rel(c.kappa, kappa_geo, std::abs(q.mu) * (std::abs(q.nu1) + std::abs(q.nu2))),
                     tol, nkap.str())};
}

std::vector<Interval> admissible_domain(const SurfaceSpec& s, Interval u_range, int n,
                                        double eps) {
  std::vector<Interval> out;
  if (!u_range.finite() || !(u_range.lo <= u_range.hi)) return out;
  n = std::max(n, 2);
  const auto us = linspace(u_range.lo, u_range.hi, n);
  std::vector<char> adm(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) adm[i] = admissible_at(s, us[i], eps);

  // boundary between a (status sa) and b (status !sa), returned on the admissible side
  auto boundary = [&](double a, double b, bool a_adm) {
    while (std::abs(b - a) > 1e-12) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      if (admissible_at(s, m, eps) == a_adm) {
        a = m;
      } else {
        b = m;
      }
    }
    return a_adm ? a : b;
  };

  // start is meaningful only while inside an admissible run (adm[i - 1] true).
  double start = us[0];
  for (std::size_t i = 1; i < us.size(); ++i) {
    if (adm[i] == adm[i - 1]) continue;
    if (adm[i]) {
      start = boundary(us[i - 1], us[i], false);
    } else {
      out.push_back({start, boundary(us[i - 1], us[i], true)});
    }
  }
  if (adm.back()) out.push_back({start, us.back()});
  return out;
}

VerificationReport verify_family(const FamilyDescriptor& desc, const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!desc.interval.finite()) throw RangeError("verification needs a finite u-interval");
  if (opt.nu < 2 || opt.nv < 1) throw RangeError("grid counts must be >= 2 (u) and >= 1 (v)");

  VerificationReport rep;
  rep.desc = desc;
  rep.nu = opt.nu;
  rep.nv = opt.nv;

  const SurfaceSpec s = build_surface(desc);
  rep.diagnostics = s.meridian.diagnostics();
  rep.v_range = opt.v_range.value_or(default_v_range(s.kind, s.alpha, s.beta));
  const Property prop = opt.check.value_or(case_info(desc.id).property);
  const bool integrated = s.meridian.integrated();
  const double tier = integrated ? opt.tol.integrated : opt.tol.closed_form;
  const Tolerances& tol = opt.tol;

  auto finish = [&]() {
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const CheckResult& c) { return c.vacuous || c.pass; });
    rep.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  };

  if (integrated) {
    const std::string grid = describe_grid(desc.interval.lo, desc.interval.hi, 0);
    try {
      const SampledMeridian* sm = s.meridian.samples();
      const std::string knots = std::to_string(sm->trajectory.size()) + " knots, " +
                                std::to_string(sm->halvings) + " step halvings";
      rep.checks.push_back(make_check("integration_constraint", knots,
                                      sm->max_constraint_residual(), desc.tol));
      rep.checks.push_back(
          make_check("integration_unit_speed", knots, sm->max_speed_residual(), desc.tol));
    } catch (const Error& e) {
      rep.checks.push_back(make_check("integration", grid, std::numeric_limits<double>::infinity(),
                                      desc.tol, e.what()));
      return finish();
    }
  }

  rep.admissible = admissible_domain(s, desc.interval, opt.scan_points);

  if (rep.admissible.empty()) {
    const std::string grid = describe_grid(desc.interval.lo, desc.interval.hi, opt.scan_points);
    const std::string note = "empty admissible domain; vacuous";
    for (const auto& name : property_check_names(prop, opt.dh_check)) {
      rep.checks.push_back(make_vacuous(name, grid, note));
    }
    for (const auto& name : kCommonChecks) rep.checks.push_back(make_vacuous(name, grid, note));
    if (desc.id == FamilyCase::MinEllI) {
      // the defining identity of the case still holds off the admissible set
      double m = 0.0;
      for (double u : linspace(desc.interval.lo, desc.interval.hi, opt.nu)) {
        const MeridianJet j = s.meridian.jet(u);
        const double a2 = s.alpha * s.alpha, b2 = s.beta * s.beta;
        const double f = j.f.val, fp = j.f.d1, fpp = j.f.d2, g = j.g.val, gp = j.g.d1,
                     gpp = j.g.d2;
        const double E = fp * fp - gp * gp, W = b2 * g * g - a2 * f * f;
        const double t1 = E * (b2 * g * fp - a2 * f * gp), t2 = W * (fpp * gp - fp * gpp);
        m = std::max(m, std::abs(h_numerator(s, u)) /
                            std::max({1.0, std::abs(t1), std::abs(t2)}));
      }
      rep.checks.push_back(make_check("h_numerator_identity",
                                      describe_grid(desc.interval.lo, desc.interval.hi, opt.nu),
                                      m, tol.identity,
                                      "H numerator vanishes identically on the family"));
    }
    return finish();
  }

  // grid on the longest admissible component, pulled inside where it ends at a root
  const Interval comp = *std::max_element(
      rep.admissible.begin(), rep.admissible.end(),
      [](const Interval& a, const Interval& b) { return a.length() < b.length(); });
  const double inset = 0.01 * comp.length();
  const Interval grid_iv{comp.lo > desc.interval.lo ? comp.lo + inset : comp.lo,
                         comp.hi < desc.interval.hi ? comp.hi - inset : comp.hi};
  rep.sampled = grid_iv;
  const auto us = linspace(grid_iv.lo, grid_iv.hi, opt.nu);
  std::vector<double> vs;
  if (!opt.v_range && s.kind == SurfaceKind::Elliptic) {
    for (int j = 0; j < opt.nv; ++j) vs.push_back(rep.v_range.lo + rep.v_range.length() * j / opt.nv);
  } else {
    vs = linspace(rep.v_range.lo, rep.v_range.hi, opt.nv);
  }

  std::vector<PointEval> pts(us.size());
  parallel_for(us.size(), [&](std::size_t i) { pts[i] = evaluate_point(s, desc, us[i], vs); });

  std::ostringstream gs;
  gs.precision(17);
  gs << us.size() << " u in [" << grid_iv.lo << ", " << grid_iv.hi << "]";
  const std::string ugrid = gs.str();
  gs << " x " << vs.size() << " v in [" << rep.v_range.lo << ", " << rep.v_range.hi << "]";
  const std::string uvgrid = gs.str();
  std::string comp_note;
  if (rep.admissible.size() > 1) {
    comp_note = std::to_string(rep.admissible.size()) + " admissible components; longest sampled";
  }

  switch (prop) {
    case Property::Minimal:
      rep.checks.push_back(make_check("minimal_h_coeff", ugrid,
                                      max_over(pts, [](auto& p) { return std::abs(p.rec.h_coeff); }),
                                      tier, comp_note));
      break;
    case Property::ParallelNormalizedH: {
      const double C = desc.param("C");
      const double target = 1.0 / (C * C);
      const bool ell = s.kind == SurfaceKind::Elliptic;
      rep.checks.push_back(make_check(
          "pnmcv_beta2", ugrid, max_over(pts, [](auto& p) { return std::abs(p.rec.geo.beta2); }),
          tol.pnmcv_beta2));
      rep.checks.push_back(make_check(
          "pnmcv_H_norm2", ugrid,
          max_over(pts, [&](auto& p) { return std::abs(p.rec.H_norm2 + (ell ? target : -target)); }),
          tol.pnmcv_h,
          ell ? "|<H,H> + 1/C^2|" : "|<H,H> - 1/C^2|: H lies along the spacelike normal n1"));
      const double hs = static_cast<double>(desc.sign) / std::abs(C);
      rep.checks.push_back(make_check(
          "pnmcv_h_coeff", ugrid,
          max_over(pts,
                   [&](auto& p) {
                     return ell ? std::abs(p.rec.h_coeff - hs)
                                : std::abs(std::abs(p.rec.h_coeff) - 1.0 / std::abs(C));
                   }),
          tol.pnmcv_h, ell ? "|h - sign/|C||" : "||h| - 1/|C||"));
      double lo = pts.front().rec.h_coeff, hi = lo;
      for (const auto& p : pts) {
        lo = std::min(lo, p.rec.h_coeff);
        hi = std::max(hi, p.rec.h_coeff);
      }
      rep.checks.push_back(make_check("pnmcv_h_constancy", ugrid, hi - lo, tol.pnmcv_h,
                                      "max h - min h over the grid"));
      if (opt.dh_check) {
        double m = 0.0;
        for (double f : {0.25, 0.5, 0.75}) {
          const double u = grid_iv.lo + f * grid_iv.length();
          m = std::max(m, fd_parallel_h(s, u, vs[vs.size() / 2], opt.h));
        }
        rep.checks.push_back(
            make_check("pnmcv_parallel_H_fd", "3 interior points", m, tol.fd, "normal part of D H"));
      }
      break;
    }
    case Property::Flat:
      rep.checks.push_back(make_check(
          "flat_K", ugrid, max_over(pts, [](auto& p) { return std::abs(p.rec.K); }), tier));
      rep.checks.push_back(make_check("flat_mu2_nu1nu2", ugrid, max_over(pts, [](auto& p) {
                                        const GeoFns& q = p.rec.geo;
                                        return std::abs(q.mu * q.mu + q.nu1 * q.nu2);
                                      }),
                                      tier));
      break;
    case Property::FlatNormalConnection:
      rep.checks.push_back(make_check(
          "fnc_kappa", ugrid, max_over(pts, [](auto& p) { return std::abs(p.rec.kappa); }), tier));
      break;
    case Property::None:
      break;
  }

  rep.checks.push_back(make_check("frame_orthonormality", uvgrid,
                                  max_over(pts, [](auto& p) { return p.orthonormality; }),
                                  tol.identity));
  rep.checks.push_back(make_check("v_independence", uvgrid,
                                  max_over(pts, [](auto& p) { return p.v_independence; }),
                                  tol.v_independence, "relative to max(1, |value|)"));
  rep.checks.push_back(make_check("chen_trA1A2", uvgrid, max_over(pts, [](auto& p) {
                                    return std::max(std::abs(p.rec.trA1A2), p.tr_vec);
                                  }),
                                  tol.identity));
  rep.checks.push_back(make_check("allied_coeff", ugrid,
                                  max_over(pts, [](auto& p) { return p.allied; }), tol.identity));
  rep.checks.push_back(make_check(
      "quasi_minimal_exclusion", uvgrid,
      max_over(pts, [](auto& p) { return std::max(p.off_normal_H, p.H_norm2_vec); }), tol.identity,
      s.kind == SurfaceKind::Elliptic
          ? "H component along spacelike n1; <H,H> = -h^2"
          : "H component along timelike n2; <H,H> = +h^2 (H lies along the spacelike n1)"));
  rep.checks.push_back(make_check("cross_check_K", ugrid,
                                  max_over(pts, [](auto& p) { return p.cross_K; }), tol.cross,
                                  "relative"));
  rep.checks.push_back(make_check("cross_check_kappa", ugrid,
                                  max_over(pts, [](auto& p) { return p.cross_kappa; }), tol.cross,
                                  "relative"));
  rep.checks.push_back(make_check("kappa_curvature_tensor", ugrid,
                                  max_over(pts, [](auto& p) { return p.kappa_tensor; }), tol.cross,
                                  "x(beta2) -+ gamma2 beta2 against the explicit kappa, relative"));

  {
    const double v_fd = vs[vs.size() / 2];
    double worst = 0.0, worst_raw = 0.0, worst_ratio = 0.0;
    int resolved = 0, total = 0;
    for (double f : {0.25, 0.5, 0.75}) {
      const double u = grid_iv.lo + f * grid_iv.length();
      for (const FdRow& r : fd_connection_check(s, u, v_fd, opt.h)) {
        ++total;
        worst = std::max(worst, r.residual_richardson);
        worst_raw = std::max(worst_raw, r.residual_h);
        if (std::isnan(r.residual_richardson)) worst = r.residual_richardson;
        if (r.resolved) {
          ++resolved;
          worst_ratio = std::max(worst_ratio, std::abs(r.ratio() - 4.0));
        }
      }
    }
    std::ostringstream g;
    g.precision(17);
    g << "3 interior u, v = " << v_fd << ", h = " << opt.h;
    std::ostringstream note;
    note.precision(3);
    note << "euclidean norm after one Richardson halving; raw residual at h " << worst_raw;
    rep.checks.push_back(make_check("fd_connection", g.str(), worst, tol.fd, note.str()));
    rep.checks.push_back(make_check(
        "fd_convergence", g.str(), worst_ratio, 0.5,
        "|ratio - 4| under h -> h/2 over " + std::to_string(resolved) + " of " +
            std::to_string(total) + " rows above the rounding floor"));
  }

  {
    bool any = false;
    double m = 0.0;
    for (const auto& p : pts) {
      if (p.relation) {
        any = true;
        m = std::max(m, *p.relation);
        if (std::isnan(*p.relation)) m = *p.relation;
      }
    }
    if (any) {
      rep.checks.push_back(make_check("relation", ugrid, m, tier, "defining relation of the case"));
    }
  }
  return finish();
}

}  // namespace grs
