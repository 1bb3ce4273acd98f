#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "grs/errors.hpp"
#include "grs/suite.hpp"
#include "grs/verifier.hpp"

namespace grs {
namespace {

FamilyDescriptor desc(FamilyCase id, std::map<std::string, double> params, double alpha,
                      double beta, double u0, double u1) {
  FamilyDescriptor d;
  d.id = id;
  d.params = std::move(params);
  d.alpha = alpha;
  d.beta = beta;
  d.interval = {u0, u1};
  return d;
}

FamilyDescriptor custom(const char* f, const char* g, SurfaceKind kind, double alpha, double beta,
                        double u0, double u1) {
  auto d = desc(FamilyCase::Custom, {}, alpha, beta, u0, u1);
  d.f_expr = f;
  d.g_expr = g;
  d.custom_kind = kind;
  return d;
}

TEST(MakeCheck, PassIsResidualWithinTolerance) {
  EXPECT_TRUE(make_check("a", "", 1e-10, 1e-9).pass);
  EXPECT_TRUE(make_check("a", "", 1e-9, 1e-9).pass);
  EXPECT_FALSE(make_check("a", "", 2e-9, 1e-9).pass);
  EXPECT_FALSE(make_check("a", "", std::nan(""), 1e-9).pass);
  const auto v = make_vacuous("a", "", "why");
  EXPECT_TRUE(v.vacuous);
  EXPECT_EQ(v.notes, "why");
}

TEST(FdConnection, PnmcvInteriorPoint) {
  const auto s = build_surface(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6));
  const auto rows = fd_connection_check(s, 3.0, 0.4, 1e-4);
  int resolved = 0;
  for (const auto& r : rows) {
    EXPECT_LE(r.residual_h, 1e-6) << r.name;
    EXPECT_LE(r.residual_richardson, r.residual_h + 1e-12) << r.name;
    if (r.resolved) {
      ++resolved;
      EXPECT_GE(r.ratio(), 3.5) << r.name;
      EXPECT_LE(r.ratio(), 4.5) << r.name;
    }
  }
  EXPECT_GE(resolved, 4);
}

TEST(FdConnection, EveryDefaultFamilySatisfiesTheDerivativeFormulas) {
  for (const auto& job : default_suite().jobs) {
    if (job.expect_fail) continue;
    const auto s = build_surface(job.desc);
    const auto dom = admissible_domain(s, job.desc.interval, 129);
    if (dom.empty()) continue;
    const double u = 0.5 * (dom.front().lo + dom.front().hi);
    for (const auto& r : fd_connection_check(s, u, 0.2)) {
      EXPECT_LE(r.residual_richardson, 1e-6) << job.label << " " << r.name;
    }
  }
}

TEST(FdConnection, StepLeavingTheIntervalThrows) {
  const auto s = build_surface(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6));
  EXPECT_THROW(fd_connection_check(s, 2.1, 0.0, 1e-4), StepError);
  EXPECT_THROW(fd_connection_check(s, 6.0 - 5e-5, 0.0, 1e-4), StepError);
}

TEST(FdParallelH, PnmcvMeanCurvatureIsParallel) {
  const auto s = build_surface(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6));
  EXPECT_LE(fd_parallel_h(s, 3.0, 0.4), 1e-6);
  const auto c = build_surface(custom("u^2", "u", SurfaceKind::Elliptic, 1, 3, 0.6, 2.9));
  EXPECT_GT(fd_parallel_h(c, 1.5, 0.4), 1e-3);
}

TEST(CrossCheck, Examples) {
  const auto fe = build_surface(desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10));
  const auto [k, kap] = cross_check(fe, 1.0);
  EXPECT_EQ(k.max_residual, 0.0);
  EXPECT_TRUE(k.pass);
  EXPECT_TRUE(kap.pass);
  const auto mh = build_surface(desc(FamilyCase::MinHypI, {{"c", 1}}, 2, 1, 0.5, 3));
  const auto [k2, kap2] = cross_check(mh, 1.0);
  EXPECT_LE(k2.max_residual, 1e-13);
  EXPECT_LE(kap2.max_residual, 1e-13);
}

TEST(CrossCheck, RandomAdmissiblePoints) {
  const auto jobs = default_suite().jobs;
  std::mt19937_64 rng(99);
  int n = 0;
  while (n < 100) {
    const auto& job = jobs[std::uniform_int_distribution<std::size_t>(0, jobs.size() - 1)(rng)];
    const auto s = build_surface(job.desc);
    const auto dom = admissible_domain(s, job.desc.interval, 65);
    if (dom.empty()) continue;
    const double u = std::uniform_real_distribution<double>(dom.front().lo, dom.front().hi)(rng);
    if (!first_fundamental(s, u).admissible) continue;
    const auto [k, kap] = cross_check(s, u);
    EXPECT_LE(k.max_residual, 1e-11) << job.label << " u=" << u;
    EXPECT_LE(kap.max_residual, 1e-11) << job.label << " u=" << u;
    ++n;
  }
}

TEST(AdmissibleDomain, Examples) {
  const auto me = build_surface(desc(FamilyCase::MinEllI, {{"c", 1}}, 2, 1, 0.1, 10));
  EXPECT_TRUE(admissible_domain(me, {0.1, 10}, 513).empty());
  const auto pe = build_surface(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.05, 10));
  EXPECT_EQ(admissible_domain(pe, {2.05, 10}, 513), (std::vector<Interval>{{2.05, 10}}));
  const auto fe = build_surface(desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10));
  EXPECT_EQ(admissible_domain(fe, {0.5, 10}, 513), (std::vector<Interval>{{0.5, 10}}));
}

TEST(AdmissibleDomain, BisectsBoundaries) {
  // f = u, g = 2: E = 1 and G = u^2 - 4, so admissible exactly for |u| < 2.
  const auto s = build_surface(custom("u", "2", SurfaceKind::Elliptic, 1, 1, -5, 5));
  const auto dom = admissible_domain(s, {-5, 5}, 101);
  ASSERT_EQ(dom.size(), 1u);
  EXPECT_NEAR(dom[0].lo, -2.0, 1e-9);
  EXPECT_NEAR(dom[0].hi, 2.0, 1e-9);
  EXPECT_GT(dom[0].lo, -2.0);
  EXPECT_LT(dom[0].hi, 2.0);
}

TEST(AdmissibleDomain, SeveralComponentsAndThrowingPoints) {
  // G = sin(u)^2 - 0.25 < 0 where |sin u| < 1/2; sqrt throws for u < 0.
  const auto s = build_surface(custom("sin(u) + 0*sqrt(u)", "0.5", SurfaceKind::Elliptic, 1, 1,
                                      -1, 7));
  const auto dom = admissible_domain(s, {-1, 7}, 401);
  ASSERT_GE(dom.size(), 2u);
  const double pi = std::numbers::pi;
  EXPECT_NEAR(dom[0].hi, pi / 6, 1e-9);
  EXPECT_NEAR(dom[1].lo, 5 * pi / 6, 1e-9);
  EXPECT_GE(dom[0].lo, 0.0);
}

TEST(VerifyFamily, MinHypIPasses) {
  VerifyOptions opt;
  opt.nu = 50;
  const auto rep = verify_family(desc(FamilyCase::MinHypI, {{"c", 1}}, 2, 1, 0.5, 3), opt);
  EXPECT_TRUE(rep.pass);
  ASSERT_NE(rep.find("minimal_h_coeff"), nullptr);
  EXPECT_LE(rep.find("minimal_h_coeff")->max_residual, 1e-9);
  EXPECT_EQ(rep.nu, 50);
  EXPECT_TRUE(rep.vacuous().empty());
}

TEST(VerifyFamily, PnmcvEllPasses) {
  const auto rep = verify_family(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6));
  EXPECT_TRUE(rep.pass);
  EXPECT_LE(rep.find("pnmcv_H_norm2")->max_residual, 1e-10);
  EXPECT_LE(rep.find("pnmcv_beta2")->max_residual, 1e-12);
  for (const char* name : {"frame_orthonormality", "v_independence", "chen_trA1A2", "allied_coeff",
                           "quasi_minimal_exclusion", "cross_check_K", "cross_check_kappa",
                           "fd_connection", "fd_convergence", "pnmcv_h_constancy"}) {
    ASSERT_NE(rep.find(name), nullptr) << name;
    EXPECT_TRUE(rep.find(name)->pass) << name;
  }
}

TEST(VerifyFamily, DirectParallelHCheckIsOptional) {
  auto d = desc(FamilyCase::PnmcvHyp, {{"C", 2}}, 1, 3, -1.8, 1.8);
  EXPECT_EQ(verify_family(d).find("pnmcv_parallel_H_fd"), nullptr);
  VerifyOptions opt;
  opt.dh_check = true;
  const auto rep = verify_family(d, opt);
  ASSERT_NE(rep.find("pnmcv_parallel_H_fd"), nullptr);
  EXPECT_TRUE(rep.pass);
}

TEST(VerifyFamily, EmptyDomainIsVacuousWithNote) {
  const auto rep = verify_family(desc(FamilyCase::MinEllI, {{"c", 1}}, 2, 1, 0.1, 10));
  EXPECT_TRUE(rep.admissible.empty());
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.vacuous().empty());
  const auto* c = rep.find("minimal_h_coeff");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->vacuous);
  EXPECT_NE(c->notes.find("empty admissible domain"), std::string::npos);
  ASSERT_NE(rep.find("h_numerator_identity"), nullptr);
  EXPECT_TRUE(rep.find("h_numerator_identity")->pass);
}

TEST(VerifyFamily, NegativeControlFails) {
  VerifyOptions opt;
  opt.check = Property::Minimal;
  const auto rep =
      verify_family(custom("u^2", "u", SurfaceKind::Elliptic, 1, 3, 0.6, 2.9), opt);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.find("minimal_h_coeff")->max_residual, 1e-3);
  EXPECT_TRUE(rep.find("frame_orthonormality")->pass);
}

TEST(VerifyFamily, ParamErrorPropagates) {
  EXPECT_THROW(verify_family(desc(FamilyCase::FlatEllII, {{"C", 4}}, 1, 1, -1, 1)), ParamError);
}

TEST(VerifyFamily, IntegrationFailureIsAFailingCheck) {
  const auto rep =
      verify_family(desc(FamilyCase::FncHypII, {{"C", 3}, {"f0", 1}, {"g0", 0.5}}, 1, 2, 0, 1));
  EXPECT_FALSE(rep.pass);
  ASSERT_NE(rep.find("integration"), nullptr);
  EXPECT_FALSE(rep.find("integration")->pass);
}

TEST(VerifyFamily, ThreadCountDoesNotChangeResults) {
  const auto d = desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10);
  ::setenv("GRS_THREADS", "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  const auto a = verify_family(d);
  ::setenv("GRS_THREADS", "4", 1);
  EXPECT_EQ(worker_count(), 4u);
  const auto b = verify_family(d);
  ::unsetenv("GRS_THREADS");
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].max_residual, b.checks[i].max_residual) << a.checks[i].name;
  }
}

TEST(DefaultVRange, KindDependent) {
  const auto e = default_v_range(SurfaceKind::Elliptic, 1, 3);
  EXPECT_EQ(e.lo, 0.0);
  EXPECT_DOUBLE_EQ(e.hi, 2 * std::numbers::pi);
  const auto h = default_v_range(SurfaceKind::Hyperbolic, 1, 3);
  EXPECT_DOUBLE_EQ(h.lo, -1.0);
  EXPECT_DOUBLE_EQ(h.hi, 1.0);
}

}  // namespace
}  // namespace grs
