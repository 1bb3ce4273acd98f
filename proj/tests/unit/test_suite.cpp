#include <gtest/gtest.h>

#include "grs/errors.hpp"
#include "grs/suite.hpp"

namespace grs {
namespace {

using nlohmann::json;

TEST(Suite, EmptyConfigPasses) {
  const auto rep = run_suite(parse_suite_config(json::object()));
  EXPECT_TRUE(rep.jobs.empty());
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(exit_code(rep), 0);
}

TEST(Suite, FailingSyntheticCaseExitsOne) {
  const json cfg = json::parse(R"({"jobs": [{"family": "custom", "kind": "elliptic", "f": "u^2",
      "g": "u", "alpha": 1, "beta": 3, "u0": 0.6, "u1": 2.9, "check": "minimal"}]})");
  const auto rep = run_suite(parse_suite_config(cfg));
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(exit_code(rep), 1);
}

TEST(Suite, ExpectFailInvertsTheOutcome) {
  const json cfg = json::parse(R"({"jobs": [{"family": "custom", "kind": "elliptic", "f": "u^2",
      "g": "u", "alpha": 1, "beta": 3, "u0": 0.6, "u1": 2.9, "check": "minimal",
      "expect_fail": true}]})");
  const auto rep = run_suite(parse_suite_config(cfg));
  EXPECT_TRUE(rep.pass);
  EXPECT_FALSE(rep.jobs[0].report.pass);
}

TEST(Suite, DefaultSuiteCoversEveryCaseAndPasses) {
  const auto cfg = default_suite();
  std::set<FamilyCase> seen;
  for (const auto& j : cfg.jobs) seen.insert(j.desc.id);
  EXPECT_EQ(seen.size(), 17u);
  const auto rep = run_suite(cfg);
  for (const auto& o : rep.jobs) EXPECT_TRUE(o.pass) << o.job.label;
  EXPECT_TRUE(rep.pass);
}

TEST(Suite, JsonIsDeterministicWithoutTiming) {
  const auto cfg = default_suite();
  EXPECT_EQ(suite_to_json(run_suite(cfg)).dump(), suite_to_json(run_suite(cfg)).dump());
}

TEST(JobFromJson, ParsesEveryKey) {
  const json j = json::parse(R"({"family": "pnmcv-ell", "label": "x", "params": {"C": 2},
      "alpha": 1, "beta": 3, "sign": -1, "branch": -1, "u0": 2.1, "u1": 6, "tol": 1e-9,
      "nu": 20, "nv": 4, "v0": 0, "v1": 1, "h": 1e-3, "scan_points": 33, "check": "flat",
      "dh_check": true})");
  const auto job = job_from_json(j);
  EXPECT_EQ(job.label, "x");
  EXPECT_EQ(job.desc.id, FamilyCase::PnmcvEll);
  EXPECT_EQ(job.desc.params.at("C"), 2.0);
  EXPECT_EQ(job.desc.sign, -1);
  EXPECT_EQ(job.desc.branch, -1);
  EXPECT_EQ(job.desc.interval, (Interval{2.1, 6}));
  EXPECT_EQ(job.desc.tol, 1e-9);
  EXPECT_EQ(job.options.nu, 20);
  EXPECT_EQ(job.options.nv, 4);
  EXPECT_EQ(job.options.v_range, (Interval{0, 1}));
  EXPECT_EQ(job.options.h, 1e-3);
  EXPECT_EQ(job.options.scan_points, 33);
  EXPECT_EQ(job.options.check, Property::Flat);
  EXPECT_TRUE(job.options.dh_check);
}

TEST(JobFromJson, RejectsBadConfigs) {
  auto bad = [](const char* text) { return job_from_json(json::parse(text)); };
  EXPECT_THROW(bad(R"({"u0": 0, "u1": 1})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "nope", "u0": 0, "u1": 1})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "colour": 1})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 1, "u1": 0})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i"})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "nu": 1})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "v0": 0})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "params": {"c": "x"}})"),
               ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "alpha": "one"})"), ConfigError);
  EXPECT_THROW(bad(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "check": "round"})"), ConfigError);
  EXPECT_THROW(parse_suite_config(json::parse(R"({"jobz": []})")), ConfigError);
  EXPECT_NO_THROW(job_from_json(json::parse(R"({"family": "fnc-ell-i", "u0": 0, "u1": 1, "csv": "a"})"),
                                {"csv"}));
}

TEST(RunSuite, ParamErrorsNameTheJob) {
  const json cfg = json::parse(
      R"({"jobs": [{"family": "flat-ell-ii", "label": "bad C", "params": {"C": 4}, "u0": -1, "u1": 1}]})");
  try {
    run_suite(parse_suite_config(cfg));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad C"), std::string::npos);
  }
}

}  // namespace
}  // namespace grs
