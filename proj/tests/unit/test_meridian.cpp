#include <gtest/gtest.h>

#include <cmath>

#include "grs/errors.hpp"
#include "grs/meridian.hpp"

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

void expect_jet(const Jet2& j, double v, double d1, double d2, double tol) {
  EXPECT_NEAR(j.val, v, tol);
  EXPECT_NEAR(j.d1, d1, tol);
  EXPECT_NEAR(j.d2, d2, tol);
}

TEST(Catalog, SixteenCasesThenCustom) {
  const auto& cat = family_catalog();
  ASSERT_EQ(cat.size(), 17u);
  EXPECT_EQ(cat.back().id, FamilyCase::Custom);
  for (const auto& c : cat) {
    EXPECT_EQ(family_case_from_name(c.name), c.id);
    EXPECT_EQ(to_string(c.id), c.name);
  }
  EXPECT_THROW(family_case_from_name("min-ell-iv"), ParamError);
  EXPECT_EQ(surface_kind_from_name("hyperbolic"), SurfaceKind::Hyperbolic);
}

TEST(ClosedForm, FncEllILinear) {
  const auto fam = build_family(desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10));
  const auto m = fam.jet(1.0);
  expect_jet(m.f, 1.2, 1.2, 0, 1e-15);
  expect_jet(m.g, 1, 1, 0, 1e-15);
}

TEST(ClosedForm, PnmcvEllSquareRoot) {
  const auto fam = build_family(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6));
  const auto m = fam.jet(3.0);
  expect_jet(m.f, 2.2360680, 1.3416408, -0.3577709, 5e-8);
  expect_jet(m.g, 3, 1, 0, 0);
}

TEST(ClosedForm, MinHypIPowerLaw) {
  const auto fam = build_family(desc(FamilyCase::MinHypI, {{"c", 1}}, 2, 1, 0.5, 3));
  const auto m = fam.jet(1.0);
  expect_jet(m.f, 1, -2, 6, 1e-14);
  expect_jet(m.g, 1, 1, 0, 0);
}

TEST(ClosedForm, MinEllIIArcSinRelation) {
  auto d = desc(FamilyCase::MinEllII, {{"A", 1}, {"C", -2}}, 2, 1, 0.8, 1.4);
  const auto fam = build_family(d);
  for (double th : {0.85, 1.0, 1.2, 1.35}) {
    const auto m = fam.jet(th);
    // f'^2 - g'^2 = 1 is not imposed on theta; E_theta equals (beta^2 g^2 - alpha^2 f^2)/beta^2.
    const double E = m.f.d1 * m.f.d1 - m.g.d1 * m.g.d1;
    const double W = d.beta * d.beta * m.g.val * m.g.val - d.alpha * d.alpha * m.f.val * m.f.val;
    EXPECT_NEAR(E, W / (d.beta * d.beta), 1e-12);
    const auto r = relation_residual(d, th, m);
    ASSERT_TRUE(r.has_value());
    EXPECT_LE(*r, 1e-12);
  }
}

TEST(ClosedForm, EveryCaseMatchesCentralDifferences) {
  const std::vector<FamilyDescriptor> ds = {
      desc(FamilyCase::MinEllI, {{"c", 1}}, 2, 1, 0.1, 10),
      desc(FamilyCase::MinEllII, {{"A", 1}, {"C", -2}}, 2, 1, 0.8, 1.4),
      desc(FamilyCase::MinEllIII, {{"a", -1}, {"b", 4}}, 1, 1, -1.8, -0.2),
      desc(FamilyCase::MinHypI, {{"c", 1}}, 2, 1, 0.5, 3),
      desc(FamilyCase::MinHypII, {{"A", 1}, {"C", 1}}, 2, 1, 0.2, 1.5),
      desc(FamilyCase::MinHypII, {{"A", -1}, {"C", 2}}, 2, 1, 0.2, 1.5),
      desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6),
      desc(FamilyCase::PnmcvHyp, {{"C", 2}}, 1, 3, -1.8, 1.8),
      desc(FamilyCase::FlatEllII, {{"C", -4}}, 1, 1, -1, 1),
      desc(FamilyCase::FlatHypII, {{"C", 1}}, 1, 2, 0.2, 1.3),
      desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10),
      desc(FamilyCase::FncHypI, {{"c", 0.7}}, 1, 2, 0.5, 3),
  };
  for (const auto& d : ds) {
    const auto fam = build_family(d);
    const double u = d.interval.lo + 0.37 * d.interval.length();
    const auto m = fam.jet(u);
    auto fd = [&](double h) {
      const auto p = fam.jet(u + h), q = fam.jet(u - h);
      return std::array<double, 2>{std::abs((p.f.val - q.f.val) / (2 * h) - m.f.d1),
                                   std::abs((p.g.val - q.g.val) / (2 * h) - m.g.d1)};
    };
    const auto e = fd(1e-4);
    const auto e2 = fd(5e-5);
    for (int i = 0; i < 2; ++i) {
      EXPECT_LE(e[i], 1e-6) << to_string(d.id);
      if (e[i] > 1e-10) {
        EXPECT_NEAR(e[i] / e2[i], 4.0, 0.5) << to_string(d.id);
      }
    }
  }
}

TEST(ClosedForm, DomainErrorsAtBranchPoints) {
  const auto fam = build_family(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6));
  EXPECT_THROW(fam.jet(1.0), DomainError);   // outside the interval
  const auto wide = build_family(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 0, 6));
  EXPECT_THROW(wide.jet(1.5), DomainError);  // u^2 < C^2
}

TEST(Params, ConstraintsAreEnforced) {
  EXPECT_THROW(build_family(desc(FamilyCase::FlatEllII, {{"C", 4}}, 1, 1, -1, 1)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::PnmcvEll, {{"C", 0}}, 1, 3, 1, 2)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FncEllI, {{"c", 0.9}}, 1, 2, 1, 2)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FncEllI, {{"c", 2.5}}, 1, 2, 1, 2)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::MinEllI, {{"c", 1}}, 1, 1, 1, 2)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::MinEllIII, {{"a", -1}, {"b", 1}}, 1, 2, -1, 0)),
               ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::MinHypII, {{"A", -1}, {"C", -1}}, 2, 1, 0, 1)),
               ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FlatHypII, {{"C", -1}}, 1, 2, 0, 1)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FncEllI, {}, 1, 2, 1, 2)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FncEllI, {{"c", 1.2}}, -1, 2, 1, 2)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 2, 1)), ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FncEllI, {{"c", std::nan("")}}, 1, 2, 1, 2)),
               ParamError);
  EXPECT_THROW(build_family(desc(FamilyCase::FlatEllI, {{"a", 1}, {"c", 0}, {"f0", 0.5}}, 1, 2,
                                 1, std::numeric_limits<double>::infinity())),
               ParamError);
}

TEST(Params, ValidExamplesBuild) {
  EXPECT_NO_THROW(build_family(desc(FamilyCase::FncEllI, {{"c", 1.2}}, 1, 2, 0.5, 10)));
  EXPECT_NO_THROW(build_family(desc(FamilyCase::PnmcvEll, {{"C", 2}}, 1, 3, 2.1, 6)));
}

TEST(Diagnostics, MinEllIReportsEmptyDomain) {
  const auto fam = build_family(desc(FamilyCase::MinEllI, {{"c", 1}}, 2, 1, 0.1, 10));
  ASSERT_FALSE(fam.diagnostics().empty());
  bool found = false;
  for (const auto& s : fam.diagnostics()) found |= s.find("no admissible point") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Custom, ExpressionsDriveTheMeridian) {
  auto d = desc(FamilyCase::Custom, {}, 1, 3, 0.6, 2.9);
  d.f_expr = "u^2";
  d.g_expr = "u";
  d.custom_kind = SurfaceKind::Hyperbolic;
  const auto fam = build_family(d);
  EXPECT_EQ(fam.kind(), SurfaceKind::Hyperbolic);
  const auto m = fam.jet(2.0);
  expect_jet(m.f, 4, 4, 2, 0);
  EXPECT_FALSE(relation_residual(d, 2.0, m).has_value());
  d.g_expr.clear();
  EXPECT_THROW(build_family(d), ParamError);
}

}  // namespace
}  // namespace grs
