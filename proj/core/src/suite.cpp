#include "grs/suite.hpp"

#include <chrono>

#include "grs/errors.hpp"
#include "grs/export.hpp"

namespace grs {

using nlohmann::json;

Property property_from_name(std::string_view name) {
  if (name == "minimal") return Property::Minimal;
  if (name == "pnmcv" || name == "parallel-normalized-H") return Property::ParallelNormalizedH;
  if (name == "flat") return Property::Flat;
  if (name == "fnc" || name == "flat-normal-connection") return Property::FlatNormalConnection;
  if (name == "none") return Property::None;
  throw ConfigError("unknown check '" + std::string(name) +
                    "' (minimal, pnmcv, flat, fnc, none)");
}

namespace {

const std::set<std::string> kJobKeys = {
    "family", "label", "params", "alpha", "beta", "sign",  "branch",      "u0",
    "u1",     "tol",   "nu",     "nv",    "v0",   "v1",    "h",           "scan_points",
    "check",  "dh_check", "expect_fail", "kind", "f", "g"};

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = get_as<T>(j, key);
}

}  // namespace

JobSpec job_from_json(const json& j, const std::set<std::string>& extra) {
  if (!j.is_object()) throw ConfigError("a job must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kJobKeys.contains(k) && !extra.contains(k)) {
      throw ConfigError("unknown config key '" + k + "'");
    }
  }
  if (!j.contains("family")) throw ConfigError("job is missing 'family'");
  JobSpec job;
  FamilyDescriptor& d = job.desc;
  const auto family = get_as<std::string>(j, "family");
  try {
    d.id = family_case_from_name(family);
  } catch (const ParamError& e) {
    throw ConfigError(e.what());
  }
  job.label = family;
  read_opt(j, "label", job.label);
  if (j.contains("params")) {
    const json& p = j.at("params");
    if (!p.is_object()) throw ConfigError("'params' must be an object of numbers");
    for (const auto& [k, v] : p.items()) {
      if (!v.is_number()) throw ConfigError("parameter '" + k + "' must be a number");
      d.params[k] = v.get<double>();
    }
  }
  read_opt(j, "alpha", d.alpha);
  read_opt(j, "beta", d.beta);
  read_opt(j, "sign", d.sign);
  read_opt(j, "branch", d.branch);
  read_opt(j, "tol", d.tol);
  read_opt(j, "u0", d.interval.lo);
  read_opt(j, "u1", d.interval.hi);
  if (j.contains("kind")) {
    try {
      d.custom_kind = surface_kind_from_name(get_as<std::string>(j, "kind"));
    } catch (const ParamError& e) {
      throw ConfigError(e.what());
    }
  }
  read_opt(j, "f", d.f_expr);
  read_opt(j, "g", d.g_expr);

  VerifyOptions& o = job.options;
  read_opt(j, "nu", o.nu);
  read_opt(j, "nv", o.nv);
  read_opt(j, "h", o.h);
  read_opt(j, "scan_points", o.scan_points);
  read_opt(j, "dh_check", o.dh_check);
  if (j.contains("v0") || j.contains("v1")) {
    if (!j.contains("v0") || !j.contains("v1")) throw ConfigError("v0 and v1 go together");
    o.v_range = Interval{get_as<double>(j, "v0"), get_as<double>(j, "v1")};
  }
  if (j.contains("check")) o.check = property_from_name(get_as<std::string>(j, "check"));
  read_opt(j, "expect_fail", job.expect_fail);

  if (o.nu < 2 || o.nv < 1) throw ConfigError("grid counts must be nu >= 2 and nv >= 1");
  if (!(o.h > 0.0)) throw ConfigError("h must be positive");
  if (!(d.tol > 0.0)) throw ConfigError("tol must be positive");
  if (o.v_range && !(o.v_range->lo < o.v_range->hi)) throw ConfigError("v-range must be nonempty");
  if (!(d.interval.lo < d.interval.hi) || !d.interval.finite()) {
    throw ConfigError("job '" + job.label + "' needs a finite, nonempty u-range (u0 < u1)");
  }
  return job;
}

SuiteConfig parse_suite_config(const json& j) {
  if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k != "jobs" && k != "timing" && k != "default") {
      throw ConfigError("unknown suite key '" + k + "'");
    }
  }
  SuiteConfig cfg;
  read_opt(j, "timing", cfg.timing);
  bool with_default = false;
  read_opt(j, "default", with_default);
  if (with_default) cfg.jobs = default_suite().jobs;
  if (j.contains("jobs")) {
    if (!j.at("jobs").is_array()) throw ConfigError("'jobs' must be an array");
    for (const auto& job : j.at("jobs")) cfg.jobs.push_back(job_from_json(job));
  }
  return cfg;
}

json default_suite_json() {
  auto job = [](const char* family, json params, double alpha, double beta, double u0, double u1) {
    return json{{"family", family}, {"params", std::move(params)}, {"alpha", alpha},
                {"beta", beta},     {"u0", u0},                    {"u1", u1}};
  };
  json jobs = json::array({
      job("min-ell-i", {{"c", 1}}, 2, 1, 0.01, 100),
      job("min-ell-ii", {{"A", 1}, {"C", -2}}, 2, 1, 0.8, 1.4),
      job("min-ell-iii", {{"a", -1}, {"b", 4}}, 1, 1, -1.8, -0.2),
      job("min-hyp-i", {{"c", 1}}, 2, 1, 0.5, 3),
      job("min-hyp-ii", {{"A", 1}, {"C", 1}}, 2, 1, 0.2, 1.5),
      job("min-hyp-iii", {{"c", 0.5}, {"f0", 1}, {"g0", 0.5}}, 1, 1, 0, 2),
      job("pnmcv-ell", {{"C", 2}}, 1, 3, 2.1, 6),
      job("pnmcv-hyp", {{"C", 2}}, 1, 3, -1.8, 1.8),
      job("flat-ell-i", {{"a", 1}, {"c", 0}, {"f0", 0.5}}, 1, 2, 1, 2),
      job("flat-ell-ii", {{"C", -4}}, 1, 1, -1, 1),
      job("flat-hyp-i", {{"a", 0.5}, {"c", 0}, {"f0", 0.3}}, 1, 2, 1, 2),
      job("flat-hyp-ii", {{"C", 1}}, 1, 2, 0.2, 1.3),
      job("fnc-ell-i", {{"c", 1.2}}, 1, 2, 0.5, 10),
      job("fnc-ell-ii", {{"C", 0.5}, {"f0", 0.5}, {"g0", 1}}, 1, 2, 0, 1),
      job("fnc-hyp-i", {{"c", 0.7}}, 1, 2, 0.5, 3),
      job("fnc-hyp-ii", {{"C", 0.3}, {"f0", 1}, {"g0", 0.5}}, 1, 2, 0, 1),
  });
  for (double C : {0.5, 5.0}) {
    json e = job("pnmcv-ell", {{"C", C}}, 1, 3, C + 0.1 * C, 6 * C);
    e["label"] = "pnmcv-ell C=" + format_number(C);
    jobs.push_back(e);
    json h = job("pnmcv-hyp", {{"C", C}}, 1, 3, -0.9 * C, 0.9 * C);
    h["label"] = "pnmcv-hyp C=" + format_number(C);
    jobs.push_back(h);
  }
  json neg = job("custom", json::object(), 1, 3, 0.6, 2.9);
  neg["label"] = "negative control: f = u^2 is not minimal";
  neg["kind"] = "elliptic";
  neg["f"] = "u^2";
  neg["g"] = "u";
  neg["check"] = "minimal";
  neg["expect_fail"] = true;
  jobs.push_back(neg);
  return json{{"jobs", jobs}};
}

SuiteConfig default_suite() { return parse_suite_config(default_suite_json()); }

SuiteReport run_suite(const SuiteConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.timing = cfg.timing;
  for (const auto& job : cfg.jobs) {
    JobOutcome out;
    out.job = job;
    try {
      out.report = verify_family(job.desc, job.options);
    } catch (const ParamError& e) {
      throw ConfigError("job '" + job.label + "': " + e.what());
    }
    out.pass = out.report.pass != job.expect_fail;
    rep.pass = rep.pass && out.pass;
    rep.jobs.push_back(std::move(out));
  }
  rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

nlohmann::ordered_json suite_to_json(const SuiteReport& rep) {
  using J = nlohmann::ordered_json;
  J jobs = J::array();
  J vacuous = J::array();
  for (const auto& o : rep.jobs) {
    J j;
    j["label"] = o.job.label;
    j["expect_fail"] = o.job.expect_fail;
    j["pass"] = o.pass;
    j["report"] = report_to_json(o.report, rep.timing);
    jobs.push_back(j);
    for (const auto& name : o.report.vacuous()) vacuous.push_back(o.job.label + ": " + name);
  }
  J out;
  out["jobs"] = jobs;
  out["vacuous"] = vacuous;
  out["pass"] = rep.pass;
  out["runtime_s"] = rep.timing ? J(rep.runtime_s) : J(nullptr);
  return out;
}

}  // namespace grs
