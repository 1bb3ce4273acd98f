#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace grs::cli {
namespace {

namespace fs = std::filesystem;

int call(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "grs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliRuns : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("grs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliRuns, VerifyWritesReport) {
  const auto r = path("r.json");
  EXPECT_EQ(call({"verify", "--family", "pnmcv-ell", "--params", "C=2", "--alpha", "1", "--beta",
                  "3", "--u0", "2.1", "--u1", "6", "--nu", "50", "--report", r}),
            kExitPass);
  const auto j = nlohmann::json::parse(slurp(r));
  EXPECT_EQ(j["family"], "pnmcv-ell");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["grid"]["nu"], 50);
  EXPECT_TRUE(j["runtime_s"].is_null());
}

TEST_F(CliRuns, ConfigFileWithFlagOverrides) {
  const auto cfg = path("cfg.json");
  std::ofstream(cfg) << R"({"family": "pnmcv-ell", "params": {"C": 2}, "alpha": 1, "beta": 3,
                           "u0": 2.1, "u1": 6, "nu": 10, "report": ")"
                     << path("from_file.json") << "\"}";
  EXPECT_EQ(call({"verify", "--config", cfg, "--nu", "12", "--report", path("from_flag.json")}),
            kExitPass);
  EXPECT_FALSE(fs::exists(path("from_file.json")));
  const auto j = nlohmann::json::parse(slurp(path("from_flag.json")));
  EXPECT_EQ(j["grid"]["nu"], 12);
  EXPECT_EQ(j["params"]["C"], 2);

  // Flags merge into the file's params rather than replacing them.
  std::ofstream(cfg) << R"({"family": "min-ell-ii", "params": {"A": 1, "C": 0}, "alpha": 2,
                           "beta": 1, "u0": 0.8, "u1": 1.4})";
  EXPECT_EQ(call({"verify", "--config", cfg, "--params", "C=-2", "--report", path("m.json")}),
            kExitPass);
  const auto m = nlohmann::json::parse(slurp(path("m.json")));
  EXPECT_EQ(m["params"]["A"], 1);
  EXPECT_EQ(m["params"]["C"], -2);
}

TEST_F(CliRuns, UnknownConfigKeyIsAUsageError) {
  const auto cfg = path("cfg.json");
  std::ofstream(cfg) << R"({"family": "fnc-ell-i", "params": {"c": 1.2}, "u0": 1, "u1": 2,
                           "colour": "red"})";
  EXPECT_EQ(call({"verify", "--config", cfg}), kExitUsage);
}

TEST_F(CliRuns, InvariantsAndMeshFiles) {
  const std::vector<std::string> fam = {"--family", "fnc-ell-i", "--params", "c=1.2", "--alpha",
                                        "1", "--beta", "2", "--u0", "1", "--u1", "2"};
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
    head.insert(head.end(), fam.begin(), fam.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  EXPECT_EQ(call(with({"invariants"}, {"--nu", "5", "--csv", path("inv.csv")})), kExitPass);
  const auto csv = slurp(path("inv.csv"));
  EXPECT_EQ(csv.rfind("u,E,F,G,nu1,nu2,mu,gamma2,beta2,K,kappa,H_coeff,H_norm2,trA1A2,admissible\n",
                      0),
            0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);

  EXPECT_EQ(call(with({"mesh"}, {"--nu", "10", "--nv", "10", "--format", "obj3", "--out",
                                 path("m.obj")})),
            kExitPass);
  const auto obj = slurp(path("m.obj"));
  std::istringstream is(obj);
  int v = 0, f = 0;
  for (std::string l; std::getline(is, l);) {
    v += l.rfind("v ", 0) == 0;
    f += l.rfind("f ", 0) == 0;
  }
  EXPECT_EQ(v, 100);
  EXPECT_EQ(f, 162);

  std::string out;
  EXPECT_EQ(call(with({"mesh"}, {"--nu", "2", "--nv", "2"}), &out), kExitPass);
  EXPECT_EQ(out.rfind("u,v,x1,x2,x3,x4\n1,0,1.2,0,1,0\n", 0), 0u);
}

TEST_F(CliRuns, SuiteIsByteIdenticalAcrossRuns) {
  EXPECT_EQ(call({"suite", "--default", "--report", path("a.json"), "--csv-dir", path("a")}),
            kExitPass);
  EXPECT_EQ(call({"suite", "--default", "--report", path("b.json"), "--csv-dir", path("b")}),
            kExitPass);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  int files = 0;
  for (const auto& e : fs::directory_iterator(path("a"))) {
    ++files;
    EXPECT_EQ(slurp(e.path()), slurp(fs::path(path("b")) / e.path().filename()));
  }
  EXPECT_EQ(files, 21);
}

TEST_F(CliRuns, SuiteWithFailingJobExitsOne) {
  const auto cfg = path("s.json");
  std::ofstream(cfg) << R"({"jobs": [{"family": "custom", "kind": "elliptic", "f": "u^2",
      "g": "u", "alpha": 1, "beta": 3, "u0": 0.6, "u1": 2.9, "check": "minimal"}]})";
  EXPECT_EQ(call({"suite", "--config", cfg}), kExitFail);
  std::ofstream(cfg) << "{}";
  EXPECT_EQ(call({"suite", "--config", cfg}), kExitPass);
  std::ofstream(cfg) << "{not json";
  EXPECT_EQ(call({"suite", "--config", cfg}), kExitUsage);
}

}  // namespace
}  // namespace grs::cli
