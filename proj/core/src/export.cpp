#include "grs/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "grs/errors.hpp"

namespace grs {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  out.back() = hi;
  return out;
}

void write_invariants_csv(std::ostream& os, const SurfaceSpec& s, const std::vector<double>& us) {
  os << kInvariantsHeader << '\n';
  for (double u : us) {
    os << format_number(u);
    std::optional<InvariantRecord> r;
    try {
      r = invariants(s, u);
    } catch (const Error&) {
    }
    if (!r) {
      os << std::string(13, ',') << ",0\n";
      continue;
    }
    for (double x : {r->E, r->F, r->G}) os << ',' << format_number(x);
    if (!r->admissible) {
      os << std::string(10, ',') << ",0\n";
      continue;
    }
    for (double x : {r->geo.nu1, r->geo.nu2, r->geo.mu, r->geo.gamma2, r->geo.beta2, r->K,
                     r->kappa, r->h_coeff, r->H_norm2, r->trA1A2}) {
      os << ',' << format_number(x);
    }
    os << ",1\n";
  }
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("write to '" + path + "' failed");
}

void export_invariants_csv(const SurfaceSpec& s, const std::vector<double>& us,
                           const std::string& path) {
  std::ostringstream os;
  write_invariants_csv(os, s, us);
  write_text_file(path, os.str());
}

MeshFormat mesh_format_from_name(std::string_view name) {
  if (name == "csv4") return MeshFormat::Csv4;
  if (name == "obj3") return MeshFormat::Obj3;
  throw ConfigError("unknown mesh format '" + std::string(name) + "' (csv4, obj3)");
}

std::string_view to_string(MeshFormat f) { return f == MeshFormat::Csv4 ? "csv4" : "obj3"; }

Projection Projection::parse(std::string_view kind, std::string_view plane) {
  if (kind == "drop-x4") return Projection{{1, 2, 3}};
  if (kind != "ortho") {
    throw ProjectionError("unknown projection '" + std::string(kind) + "' (drop-x4, ortho)");
  }
  Projection p;
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= plane.size()) {
    const std::size_t comma = std::min(plane.find(',', pos), plane.size());
    std::string_view tok = plane.substr(pos, comma - pos);
    if (!tok.empty() && (tok.front() == 'x' || tok.front() == 'X')) tok.remove_prefix(1);
    int axis = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), axis);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || axis < 1 || axis > 4 ||
        n >= 3) {
      throw ProjectionError("projection plane must list three of the axes 1..4, got '" +
                            std::string(plane) + "'");
    }
    p.axes[n++] = axis;
    pos = comma + 1;
  }
  if (n != 3 || p.axes[0] == p.axes[1] || p.axes[0] == p.axes[2] || p.axes[1] == p.axes[2]) {
    throw ProjectionError("projection plane needs three distinct axes, got '" +
                          std::string(plane) + "'");
  }
  return p;
}

void write_mesh(std::ostream& os, const SurfaceSpec& s, const std::vector<double>& us,
                const std::vector<double>& vs, const Projection& proj, MeshFormat fmt) {
  if (fmt == MeshFormat::Csv4) os << "u,v,x1,x2,x3,x4\n";
  for (double u : us) {
    const MeridianJet m = s.meridian.jet(u);
    for (double v : vs) {
      const Vec4 z = position_jets(s, m, v).z;
      if (fmt == MeshFormat::Csv4) {
        os << format_number(u) << ',' << format_number(v);
        for (std::size_t k = 0; k < 4; ++k) os << ',' << format_number(z[k]);
        os << '\n';
      } else {
        os << 'v';
        for (int a : proj.axes) os << ' ' << format_number(z[static_cast<std::size_t>(a - 1)]);
        os << '\n';
      }
    }
  }
  if (fmt != MeshFormat::Obj3 || us.size() < 2 || vs.size() < 2) return;
  const std::size_t nv = vs.size();
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const std::size_t a = i * nv + j + 1, b = a + 1, c = a + nv, d = c + 1;
      os << "f " << a << ' ' << b << ' ' << d << '\n';
      os << "f " << a << ' ' << d << ' ' << c << '\n';
    }
  }
}

void export_mesh(const SurfaceSpec& s, const std::vector<double>& us, const std::vector<double>& vs,
                 const Projection& proj, MeshFormat fmt, const std::string& path) {
  std::ostringstream os;
  write_mesh(os, s, us, vs, proj, fmt);
  write_text_file(path, os.str());
}

nlohmann::ordered_json descriptor_params_json(const FamilyDescriptor& d) {
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.params) p[k] = v;
  return p;
}

nlohmann::ordered_json report_to_json(const VerificationReport& rep, bool timing) {
  using J = nlohmann::ordered_json;
  const FamilyDescriptor& d = rep.desc;
  J j;
  j["family"] = std::string(to_string(d.id));
  j["params"] = descriptor_params_json(d);
  j["alpha"] = d.alpha;
  j["beta"] = d.beta;
  j["sign"] = d.sign;
  if (case_info(d.id).integrated) {
    j["branch"] = d.branch;
    j["tol"] = d.tol;
  }
  if (d.id == FamilyCase::Custom) {
    j["kind"] = std::string(to_string(d.custom_kind));
    j["f"] = d.f_expr;
    j["g"] = d.g_expr;
  }
  J grid;
  grid["u0"] = d.interval.lo;
  grid["u1"] = d.interval.hi;
  grid["nu"] = rep.nu;
  grid["v0"] = rep.v_range.lo;
  grid["v1"] = rep.v_range.hi;
  grid["nv"] = rep.nv;
  J adm = J::array();
  for (const auto& iv : rep.admissible) adm.push_back(J::array({iv.lo, iv.hi}));
  grid["admissible"] = adm;
  grid["sampled"] = rep.sampled ? J::array({rep.sampled->lo, rep.sampled->hi}) : J(nullptr);
  j["grid"] = grid;
  J checks = J::array();
  for (const auto& c : rep.checks) {
    J cj;
    cj["name"] = c.name;
    cj["grid"] = c.grid;
    cj["max_residual"] = c.vacuous ? J(nullptr) : J(c.max_residual);
    cj["tolerance"] = c.vacuous ? J(nullptr) : J(c.tolerance);
    cj["pass"] = c.pass;
    cj["vacuous"] = c.vacuous;
    cj["notes"] = c.notes;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["vacuous"] = rep.vacuous();
  j["diagnostics"] = rep.diagnostics;
  j["pass"] = rep.pass;
  j["runtime_s"] = timing ? J(rep.runtime_s) : J(nullptr);
  return j;
}

}  // namespace grs
