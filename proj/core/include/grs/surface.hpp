#pragma once

// Rotational surfaces of elliptic and hyperbolic type with planar meridian
//   elliptic:   z = (f cos av, f sin av, g cos bv, g sin bv)
//   hyperbolic: z = (f cosh av, g cosh bv, f sinh av, g sinh bv)
// and everything computed from them at a point: frames, fundamental forms,
// geometric functions, curvatures and shape operators.
//
// Every quantity here is analytic (meridian jets plus closed-form v factors).

#include <array>

#include "grs/meridian.hpp"
#include "grs/pe4.hpp"

namespace grs {

inline constexpr double kAdmissibleEps = 1e-10;

struct SurfaceSpec {
  SurfaceKind kind = SurfaceKind::Elliptic;
  double alpha = 1.0;
  double beta = 1.0;
  MeridianFamily meridian;
};

/// Builds the meridian and wraps it; alpha, beta and kind come from the descriptor.
SurfaceSpec build_surface(const FamilyDescriptor& desc);

struct PointJets {
  Vec4 z, z_u, z_v, z_uu, z_uv, z_vv;
};

struct FirstFundamental {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  bool admissible = false;
};

struct Frame {
  Vec4 x, y, n1, n2;
};

struct GeoFns {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double mu = 0.0;
  double gamma2 = 0.0;
  double beta2 = 0.0;
};

/// Coefficients of sigma(a, b) along (n1, n2).
struct SecondFundamental {
  std::array<double, 2> xx{}, xy{}, yy{};
};

struct Curvatures {
  double K = 0.0;
  double kappa = 0.0;
  double h_coeff = 0.0;  // H = h_coeff * n2 (elliptic) or h_coeff * n1 (hyperbolic)
  double H_norm2 = 0.0;  // <H, H>
};

using Mat2 = std::array<std::array<double, 2>, 2>;

struct ShapeOperators {
  Mat2 A1{};  // A_{n1} in the basis (x, y)
  Mat2 A2{};  // A_{n2}
  double trA1A2 = 0.0;
  double allied_coeff = 0.0;
};

struct InvariantRecord {
  double u = 0.0;
  double E = 0.0, F = 0.0, G = 0.0;
  GeoFns geo;
  double K = 0.0;
  double kappa = 0.0;
  double h_coeff = 0.0;
  double H_norm2 = 0.0;
  double trA1A2 = 0.0;
  bool admissible = false;
};

PointJets position_jets(const SurfaceSpec& s, double u, double v);
PointJets position_jets(const SurfaceSpec& s, const MeridianJet& m, double v);

/// Never throws for inadmissible points; DomainError propagates from the meridian.
FirstFundamental first_fundamental(const SurfaceSpec& s, double u, double v = 0.0,
                                   double eps = kAdmissibleEps);
FirstFundamental first_fundamental(const SurfaceSpec& s, const MeridianJet& m,
                                   double eps = kAdmissibleEps);

/// InadmissiblePointError unless E > eps and G < -eps.
Frame frames(const SurfaceSpec& s, double u, double v, double eps = kAdmissibleEps);

/// v-derivatives of n1 and n2 (tangent to the v-circles), used by the derivative formulas.
std::array<Vec4, 2> normals_dv(const SurfaceSpec& s, double u, double v,
                               double eps = kAdmissibleEps);

GeoFns geometric_functions(const SurfaceSpec& s, double u, double eps = kAdmissibleEps);

/// sigma assembled from the geometric functions.
SecondFundamental second_fundamental(const SurfaceSpec& s, double u, double v = 0.0,
                                     double eps = kAdmissibleEps);

/// sigma(x,x), sigma(x,y), sigma(y,y) as vectors, by projecting z_ab onto the normal plane.
std::array<Vec4, 3> second_fundamental_projected(const SurfaceSpec& s, double u, double v,
                                                 double eps = kAdmissibleEps);

/// K, kappa and the H coefficient from the closed-form expressions in f, g and derivatives.
Curvatures curvatures(const SurfaceSpec& s, double u, double eps = kAdmissibleEps);

/// kappa from the normal curvature tensor, -<R(x,y)n1, n2>, built from the normal
/// connection coefficients: x(beta2) - gamma2 beta2 (elliptic), its negative (hyperbolic).
double kappa_normal_curvature(const SurfaceSpec& s, double u, double eps = kAdmissibleEps);

/// Numerator of the H coefficient; zero exactly when the surface is minimal at u.
double h_numerator(const SurfaceSpec& s, double u);

/// The unit normal carrying H: n2 for elliptic, n1 for hyperbolic surfaces.
int mean_curvature_normal(SurfaceKind kind);

ShapeOperators shape_operators(const SurfaceSpec& s, double u, double v = 0.0,
                               double eps = kAdmissibleEps);

/// H as a vector of R^4_2 at (u, v).
Vec4 mean_curvature_vector(const SurfaceSpec& s, double u, double v,
                           double eps = kAdmissibleEps);

/// Full record at u; invariant fields stay zero when the point is inadmissible.
InvariantRecord invariants(const SurfaceSpec& s, double u, double eps = kAdmissibleEps);

/// Record recomputed from vectors at (u, v) (frames, projected sigma, Gram matrices);
/// independent of the closed-form route and used for the v-independence check.
InvariantRecord invariants_at(const SurfaceSpec& s, double u, double v,
                              double eps = kAdmissibleEps);

}  // namespace grs
