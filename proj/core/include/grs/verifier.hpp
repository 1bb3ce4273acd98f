#pragma once

// Case-keyed verification: finite-difference oracles for the frame
// derivative formulas, two-route consistency checks, admissible-domain
// scanning and the per-family property bundles.

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grs/surface.hpp"

namespace grs {

struct CheckResult {
  std::string name;
  std::string grid;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool vacuous = false;
  std::string notes;
};

/// pass <=> max_residual <= tolerance (NaN residuals fail).
CheckResult make_check(std::string name, std::string grid, double max_residual, double tolerance,
                       std::string notes = {});
CheckResult make_vacuous(std::string name, std::string grid, std::string notes);

struct Tolerances {
  double closed_form = 1e-9;   // property checks on closed-form families
  double integrated = 1e-6;    // property checks on integrated families
  double identity = 1e-12;     // algebraic identities (frames, Chen, quasi-minimal)
  double v_independence = 1e-10;
  double cross = 1e-11;        // relative, explicit vs. second-route formulas
  double fd = 1e-6;            // finite-difference oracle at h
  double pnmcv_beta2 = 1e-12;
  double pnmcv_h = 1e-10;
};

struct VerifyOptions {
  int nu = 50;
  int nv = 8;
  std::optional<Interval> v_range;  // default: [0, 2pi) elliptic, [-3/m, 3/m] hyperbolic
  double h = 1e-4;                  // finite-difference step
  int scan_points = 513;            // admissible-domain scan
  bool dh_check = false;            // direct D H = 0 check for pnmcv families
  std::optional<Property> check;    // property to verify; default: the case's own
  Tolerances tol;
};

struct VerificationReport {
  FamilyDescriptor desc;
  std::vector<Interval> admissible;  // maximal admissible subintervals of desc.interval
  std::optional<Interval> sampled;   // the component the grid was placed on
  Interval v_range;
  int nu = 0;
  int nv = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> diagnostics;
  bool pass = false;
  double runtime_s = 0.0;

  std::vector<std::string> vacuous() const;
  const CheckResult* find(std::string_view name) const;
};

/// One row of the derivative-formula table: residual norms at h, at h/2 and of the
/// Richardson combination (4 D(h/2) - D(h)) / 3.
struct FdRow {
  std::string name;  // e.g. "D'_x x"
  double residual_h = 0.0;
  double residual_h2 = 0.0;
  double residual_richardson = 0.0;
  double scale = 0.0;     // euclidean norm of the finite-difference derivative
  bool resolved = false;  // residual_h rises above the rounding floor
  double ratio() const { return residual_h2 > 0.0 ? residual_h / residual_h2 : 0.0; }
};

inline constexpr double kFdResolution = 1e-9;

/// Central differences of the frame fields at (u, v) against the eight derivative formulas.
/// StepError when u +- h leaves the meridian interval.
std::array<FdRow, 8> fd_connection_check(const SurfaceSpec& s, double u, double v, double h = 1e-4);

/// Largest normal component of D'_x H and D'_y H, by central differences.
double fd_parallel_h(const SurfaceSpec& s, double u, double v, double h = 1e-4);

/// (explicit K vs. Gauss-equation K, explicit kappa vs. -+mu(nu1 + nu2)), relative residuals.
std::pair<CheckResult, CheckResult> cross_check(const SurfaceSpec& s, double u,
                                                double tol = 1e-11);

/// Maximal subintervals of u_range where E > eps and G < -eps; sign changes are
/// bracketed by bisection to 1e-12. Points where the meridian throws count as inadmissible.
std::vector<Interval> admissible_domain(const SurfaceSpec& s, Interval u_range, int n,
                                        double eps = kAdmissibleEps);

/// Builds the surface (ParamError propagates) and runs the property bundle.
VerificationReport verify_family(const FamilyDescriptor& desc, const VerifyOptions& opt = {});

/// Default v grid for a surface kind.
Interval default_v_range(SurfaceKind kind, double alpha, double beta);

/// Parallelism cap: GRS_THREADS when set and positive, else hardware concurrency.
unsigned worker_count();

}  // namespace grs
