#pragma once

// Plot-ready exports: invariant tables, sampled meshes and JSON reports.
// All numbers use the shortest decimal form that round-trips to the same double.

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "grs/surface.hpp"
#include "grs/verifier.hpp"

namespace grs {

inline constexpr std::string_view kInvariantsHeader =
    "u,E,F,G,nu1,nu2,mu,gamma2,beta2,K,kappa,H_coeff,H_norm2,trA1A2,admissible";

/// Shortest round-trip decimal; negative zero prints as 0, non-finite values as nan/inf.
std::string format_number(double x);

/// Inadmissible rows keep u, E, F, G and leave the invariant cells empty;
/// rows where the meridian itself is undefined keep only u.
void write_invariants_csv(std::ostream& os, const SurfaceSpec& s, const std::vector<double>& us);
void export_invariants_csv(const SurfaceSpec& s, const std::vector<double>& us,
                           const std::string& path);

enum class MeshFormat { Csv4, Obj3 };
MeshFormat mesh_format_from_name(std::string_view name);  // ConfigError
std::string_view to_string(MeshFormat f);

/// Coordinates (1-based) kept by the orthographic projection to 3-space.
struct Projection {
  std::array<int, 3> axes{1, 2, 3};

  /// "drop-x4", or "ortho" with a plane such as "1,2,4"; ProjectionError otherwise.
  static Projection parse(std::string_view kind, std::string_view plane = "1,2,3");
};

/// Row-major (u outer, v inner) samples of z(u, v).
void write_mesh(std::ostream& os, const SurfaceSpec& s, const std::vector<double>& us,
                const std::vector<double>& vs, const Projection& proj, MeshFormat fmt);
void export_mesh(const SurfaceSpec& s, const std::vector<double>& us, const std::vector<double>& vs,
                 const Projection& proj, MeshFormat fmt, const std::string& path);

/// The report schema; runtime_s is null unless timing is requested.
nlohmann::ordered_json report_to_json(const VerificationReport& rep, bool timing);
nlohmann::ordered_json descriptor_params_json(const FamilyDescriptor& d);

/// Writes content to path; IoError on failure.
void write_text_file(const std::string& path, std::string_view content);

std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace grs
