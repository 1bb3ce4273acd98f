#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "grs/errors.hpp"
#include "grs/export.hpp"
#include "grs/suite.hpp"

namespace grs::cli {

namespace {

using nlohmann::json;

// Keys a single-run config may carry besides the job keys.
const std::set<std::string> kCliKeys = {"report", "csv",   "out",  "format",
                                        "projection", "plane", "seed", "timing"};

// Flags shared by invariants, verify and mesh. Each flag, when given, overrides
// the same key of the --config file.
struct RunFlags {
  std::string config;
  std::string family;
  std::vector<std::string> params;
  double alpha = 1.0, beta = 1.0, tol = 1e-10, u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0, h = 1e-4;
  int sign = 1, branch = 1, nu = 50, nv = 8, seed = 0;
  std::string kind, f, g, check, report, csv, out, format, projection, plane;
  bool dh_check = false, timing = false;

  std::map<std::string, CLI::Option*> opts;
};

void add_family_flags(CLI::App* app, RunFlags& r) {
  r.opts["config"] = app->add_option("--config", r.config, "JSON file mirroring the flags");
  r.opts["family"] = app->add_option("--family", r.family, "case id, see `family list`");
  r.opts["params"] =
      app->add_option("--params", r.params, "parameters as name=value, comma separated")
          ->delimiter(',');
  r.opts["alpha"] = app->add_option("--alpha", r.alpha, "rotation speed alpha > 0");
  r.opts["beta"] = app->add_option("--beta", r.beta, "rotation speed beta > 0");
  r.opts["sign"] = app->add_option("--sign", r.sign, "explicit +-1 branch of the case formula");
  r.opts["branch"] = app->add_option("--branch", r.branch, "initial root of integrated cases");
  r.opts["tol"] = app->add_option("--tol", r.tol, "constraint tolerance of integrated cases");
  r.opts["u0"] = app->add_option("--u0", r.u0, "start of the u-range");
  r.opts["u1"] = app->add_option("--u1", r.u1, "end of the u-range");
  r.opts["nu"] = app->add_option("--nu", r.nu, "number of u samples");
  r.opts["kind"] = app->add_option("--kind", r.kind, "custom family: elliptic or hyperbolic");
  r.opts["f"] = app->add_option("--f", r.f, "custom family: f(u) expression");
  r.opts["g"] = app->add_option("--g", r.g, "custom family: g(u) expression");
  r.opts["seed"] = app->add_option("--seed", r.seed, "seed recorded with the run");
}

void add_v_flags(CLI::App* app, RunFlags& r) {
  r.opts["nv"] = app->add_option("--nv", r.nv, "number of v samples");
  r.opts["v0"] = app->add_option("--v0", r.v0, "start of the v-range");
  r.opts["v1"] = app->add_option("--v1", r.v1, "end of the v-range");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

std::pair<std::string, double> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("parameter '" + text + "' must look like name=value");
  }
  const std::string name = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError("parameter '" + name + "' has non-numeric value '" + value + "'");
  }
  return {name, x};
}

// The config file with every explicitly given flag layered on top.
json merged_config(const RunFlags& r) {
  json j = r.config.empty() ? json::object() : read_json_file(r.config);
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  auto given = [&](const char* key) {
    auto it = r.opts.find(key);
    return it != r.opts.end() && it->second->count() > 0;
  };
  if (given("family")) j["family"] = r.family;
  if (given("params")) {
    if (!j.contains("params")) j["params"] = json::object();
    for (const auto& p : r.params) {
      const auto [name, value] = parse_param(p);
      j["params"][name] = value;
    }
  }
  if (given("alpha")) j["alpha"] = r.alpha;
  if (given("beta")) j["beta"] = r.beta;
  if (given("sign")) j["sign"] = r.sign;
  if (given("branch")) j["branch"] = r.branch;
  if (given("tol")) j["tol"] = r.tol;
  if (given("u0")) j["u0"] = r.u0;
  if (given("u1")) j["u1"] = r.u1;
  if (given("nu")) j["nu"] = r.nu;
  if (given("nv")) j["nv"] = r.nv;
  if (given("v0")) j["v0"] = r.v0;
  if (given("v1")) j["v1"] = r.v1;
  if (given("h")) j["h"] = r.h;
  if (given("kind")) j["kind"] = r.kind;
  if (given("f")) j["f"] = r.f;
  if (given("g")) j["g"] = r.g;
  if (given("check")) j["check"] = r.check;
  if (given("dh_check")) j["dh_check"] = r.dh_check;
  if (given("seed")) j["seed"] = r.seed;
  if (given("timing")) j["timing"] = r.timing;
  const std::pair<const char*, const std::string*> paths[] = {
      {"report", &r.report}, {"csv", &r.csv},     {"out", &r.out},
      {"format", &r.format}, {"projection", &r.projection}, {"plane", &r.plane}};
  for (const auto& [key, field] : paths) {
    if (given(key)) j[key] = *field;
  }
  return j;
}

std::string string_or(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

bool bool_or(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError(std::string("'") + key + "' must be a boolean");
  return j.at(key).get<bool>();
}

void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_text_file(path, content);
  }
}

std::vector<double> v_grid(const JobSpec& job, SurfaceKind kind) {
  const Interval v =
      job.options.v_range.value_or(default_v_range(kind, job.desc.alpha, job.desc.beta));
  return uniform_grid(v.lo, v.hi, job.options.nv);
}

int cmd_family_list(bool as_json, std::ostream& out) {
  if (as_json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : family_catalog()) {
      nlohmann::ordered_json e;
      e["id"] = std::string(c.name);
      e["kind"] = c.id == FamilyCase::Custom ? "elliptic|hyperbolic" : std::string(to_string(c.kind));
      e["property"] = std::string(to_string(c.property));
      e["params"] = std::string(c.params);
      e["constraints"] = std::string(c.constraints);
      e["parameter"] = std::string(c.parameter);
      e["relation"] = std::string(c.relation);
      e["integrated"] = c.integrated;
      arr.push_back(e);
    }
    out << arr.dump(2) << '\n';
    return kExitPass;
  }
  for (const auto& c : family_catalog()) {
    out << std::left << std::setw(13) << c.name << std::setw(11)
        << (c.id == FamilyCase::Custom ? "either" : to_string(c.kind)) << std::setw(10)
        << (c.params.empty() ? "-" : c.params) << c.constraints << '\n';
  }
  return kExitPass;
}

int cmd_invariants(const RunFlags& r, std::ostream& out) {
  const json cfg = merged_config(r);
  const JobSpec job = job_from_json(cfg, kCliKeys);
  const SurfaceSpec s = build_surface(job.desc);
  std::ostringstream os;
  write_invariants_csv(os, s, uniform_grid(job.desc.interval.lo, job.desc.interval.hi, job.options.nu));
  write_or_print(string_or(cfg, "csv", ""), os.str(), out);
  return kExitPass;
}

int cmd_verify(const RunFlags& r, std::ostream& out) {
  const json cfg = merged_config(r);
  const JobSpec job = job_from_json(cfg, kCliKeys);
  const VerificationReport rep = verify_family(job.desc, job.options);
  const std::string report = string_or(cfg, "report", "");
  if (!report.empty()) {
    auto j = report_to_json(rep, bool_or(cfg, "timing", false));
    if (cfg.contains("seed")) j["seed"] = cfg.at("seed");
    write_text_file(report, j.dump(2) + "\n");
  }
  out << (rep.pass ? "PASS " : "FAIL ") << to_string(job.desc.id) << '\n';
  for (const auto& c : rep.checks) {
    out << "  " << (c.vacuous ? "VACUOUS" : c.pass ? "pass" : "FAIL") << ' ' << c.name;
    if (!c.vacuous) {
      out << ' ' << format_number(c.max_residual) << " <= " << format_number(c.tolerance);
    }
    if (!c.notes.empty()) out << "  (" << c.notes << ')';
    out << '\n';
  }
  for (const auto& d : rep.diagnostics) out << "  note: " << d << '\n';
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_mesh(const RunFlags& r, std::ostream& out) {
  const json cfg = merged_config(r);
  const JobSpec job = job_from_json(cfg, kCliKeys);
  const SurfaceSpec s = build_surface(job.desc);
  const MeshFormat fmt = mesh_format_from_name(string_or(cfg, "format", "csv4"));
  const Projection proj =
      Projection::parse(string_or(cfg, "projection", "drop-x4"), string_or(cfg, "plane", "1,2,3"));
  std::ostringstream os;
  write_mesh(os, s, uniform_grid(job.desc.interval.lo, job.desc.interval.hi, job.options.nu),
             v_grid(job, s.kind), proj, fmt);
  write_or_print(string_or(cfg, "out", ""), os.str(), out);
  return kExitPass;
}

int cmd_suite(const std::string& config, bool use_default, bool timing, const std::string& report,
              const std::string& csv_dir, std::ostream& out) {
  json j = config.empty() ? json::object() : read_json_file(config);
  if (use_default) j["default"] = true;
  if (timing) j["timing"] = true;
  const SuiteConfig cfg = parse_suite_config(j);
  const SuiteReport rep = run_suite(cfg);
  if (!report.empty()) write_text_file(report, suite_to_json(rep).dump(2) + "\n");
  if (!csv_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(csv_dir, ec);
    if (ec) throw IoError("cannot create '" + csv_dir + "': " + ec.message());
    for (std::size_t i = 0; i < rep.jobs.size(); ++i) {
      const JobSpec& job = rep.jobs[i].job;
      std::ostringstream name;
      name << std::setw(2) << std::setfill('0') << i << '-' << to_string(job.desc.id) << ".csv";
      const SurfaceSpec s = build_surface(job.desc);
      export_invariants_csv(
          s, uniform_grid(job.desc.interval.lo, job.desc.interval.hi, job.options.nu),
          (std::filesystem::path(csv_dir) / name.str()).string());
    }
  }
  for (const auto& o : rep.jobs) {
    out << (o.pass ? "PASS " : "FAIL ") << o.job.label;
    if (o.job.expect_fail) out << " (expected to fail: " << (o.report.pass ? "passed" : "failed") << ')';
    const auto vac = o.report.vacuous();
    if (!vac.empty()) out << " [vacuous: empty admissible domain]";
    out << '\n';
  }
  out << (rep.pass ? "suite PASS" : "suite FAIL") << " (" << rep.jobs.size() << " jobs)\n";
  return exit_code(rep);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotational surfaces in neutral 4-space: invariants, verification, meshes", "grs"};
  app.require_subcommand(1);

  auto* family = app.add_subcommand("family", "family catalog");
  auto* family_list = family->add_subcommand("list", "print the classification cases");
  bool list_json = false;
  family_list->add_flag("--json", list_json, "print the catalog as JSON");
  family->require_subcommand(1);

  RunFlags inv, ver, mesh;
  auto* invariants = app.add_subcommand("invariants", "invariant table as CSV");
  add_family_flags(invariants, inv);
  inv.opts["csv"] = invariants->add_option("--csv", inv.csv, "output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "verify the property bundle of a family");
  add_family_flags(verify, ver);
  add_v_flags(verify, ver);
  verify->set_help_flag("--help", "Print this help message and exit");
  ver.opts["h"] = verify->add_option("--h", ver.h, "finite-difference step");
  ver.opts["check"] = verify->add_option("--check", ver.check,
                                         "property to verify: minimal, pnmcv, flat, fnc, none");
  ver.opts["dh_check"] = verify->add_flag("--dh-check", ver.dh_check, "also check D H = 0 directly");
  ver.opts["report"] = verify->add_option("--report", ver.report, "JSON report path");
  ver.opts["timing"] = verify->add_flag("--timing", ver.timing, "record runtime_s in the report");

  auto* meshc = app.add_subcommand("mesh", "sample z(u, v) to csv4 or obj3");
  add_family_flags(meshc, mesh);
  add_v_flags(meshc, mesh);
  mesh.opts["format"] = meshc->add_option("--format", mesh.format, "csv4 or obj3");
  mesh.opts["projection"] =
      meshc->add_option("--projection", mesh.projection, "obj3 projection: drop-x4 or ortho");
  mesh.opts["plane"] = meshc->add_option("--plane", mesh.plane, "ortho axes, e.g. 1,2,4");
  mesh.opts["out"] = meshc->add_option("--out", mesh.out, "output path (default stdout)");

  std::string suite_config, suite_report, suite_csv;
  bool suite_default = false, suite_timing = false;
  auto* suite = app.add_subcommand("suite", "run a batch of verification jobs");
  suite->add_option("--config", suite_config, "suite JSON: {\"jobs\": [...], \"default\": bool}");
  suite->add_flag("--default", suite_default, "include the canned suite");
  suite->add_flag("--timing", suite_timing, "record runtimes in the report");
  suite->add_option("--report", suite_report, "JSON report path");
  suite->add_option("--csv-dir", suite_csv, "write one invariant CSV per job here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (family_list->parsed()) return cmd_family_list(list_json, out);
    if (invariants->parsed()) return cmd_invariants(inv, out);
    if (verify->parsed()) return cmd_verify(ver, out);
    if (meshc->parsed()) return cmd_mesh(mesh, out);
    if (suite->parsed()) {
      return cmd_suite(suite_config, suite_default, suite_timing, suite_report, suite_csv, out);
    }
  } catch (const Error& e) {
    err << "grs: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "grs: unexpected error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace grs::cli
