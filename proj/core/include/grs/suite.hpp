#pragma once

// Batches of verify_family jobs described in JSON, with a canned default suite
// covering every classification case plus a negative control.
//
// Job keys: family (required), label, params {name: value}, alpha, beta, sign,
// branch, u0, u1, tol, nu, nv, v0, v1, h, scan_points, check, dh_check,
// expect_fail, kind, f, g. Unknown keys are a ConfigError.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grs/verifier.hpp"

namespace grs {

struct JobSpec {
  std::string label;
  FamilyDescriptor desc;
  VerifyOptions options;
  bool expect_fail = false;  // negative control: the job passes when verification fails
};

struct SuiteConfig {
  std::vector<JobSpec> jobs;
  bool timing = false;  // record runtimes; off keeps reports byte-identical across runs
};

struct JobOutcome {
  JobSpec job;
  VerificationReport report;
  bool pass = false;  // report.pass != expect_fail
};

struct SuiteReport {
  std::vector<JobOutcome> jobs;
  bool pass = true;
  bool timing = false;
  double runtime_s = 0.0;
};

/// Property names accepted by the "check" key.
Property property_from_name(std::string_view name);

/// Parses one job object. Keys in `extra` are tolerated and ignored (CLI-only settings).
JobSpec job_from_json(const nlohmann::json& j, const std::set<std::string>& extra = {});

/// {"jobs": [...], "timing": bool, "default": bool}; "default" prepends the canned suite.
SuiteConfig parse_suite_config(const nlohmann::json& j);

/// The canned suite as JSON (the same form parse_suite_config accepts).
nlohmann::json default_suite_json();
SuiteConfig default_suite();

/// Runs jobs in order. ParamError raised by a job becomes a ConfigError naming the job.
SuiteReport run_suite(const SuiteConfig& cfg);

nlohmann::ordered_json suite_to_json(const SuiteReport& rep);

inline int exit_code(const SuiteReport& rep) { return rep.pass ? 0 : 1; }

}  // namespace grs
