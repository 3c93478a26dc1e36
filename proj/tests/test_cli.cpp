#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ccalc/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ccalc");
  std::ostringstream out, err;
  const int code = ccalc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ccalc_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

class SeedEnvGuard {
 public:
  SeedEnvGuard() { unsetenv("CONTRACTION_CALC_SEED"); }
  ~SeedEnvGuard() { unsetenv("CONTRACTION_CALC_SEED"); }
};

}  // namespace

TEST(Cli, NoArgumentsPrintsUsage) {
  const auto r = run({});
  EXPECT_EQ(r.code, ccalc::cli::kUsageError);
  EXPECT_NE(r.err.find("counterexample"), std::string::npos);
}

TEST(Cli, UnknownSubcommandAndFlag) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--bogus"}).code, 2);
}

TEST(Cli, HelpSucceeds) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("lipschitz-sweep"), std::string::npos);
  const auto s = run({"lipschitz-sweep", "--help"});
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("--jobs"), std::string::npos);
}

TEST(Cli, RangeAndIndexValidation) {
  EXPECT_EQ(run({"lipschitz-sweep", "--m", "200"}).code, 2);
  EXPECT_EQ(run({"lipschitz-sweep", "--dim", "65"}).code, 2);
  EXPECT_EQ(run({"lipschitz-sweep", "--trials", "100001"}).code, 2);
  EXPECT_EQ(run({"lipschitz-sweep", "--p", "abc"}).code, 2);
  EXPECT_EQ(run({"lipschitz-sweep", "--p", "3", "--trials", "2"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--p", "0.5"}).code, 2);
  EXPECT_EQ(run({"blowup-table", "--p-list", "2"}).code, 2);
  EXPECT_EQ(run({"blowup-table", "--m-list", "100"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"besov-norm"}).code, 2);
}

TEST(Cli, CounterexampleReport) {
  const auto r = run({"counterexample", "--m", "8", "--p", "inf", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "counterexample");
  EXPECT_EQ(j["status"], "pass");
  EXPECT_GT(j["report"]["ratio"].get<double>(), 1.0);
  EXPECT_EQ(j["report"]["p"], "inf");
  EXPECT_TRUE(j.contains("generated_at"));
}

TEST(Cli, LipschitzSweepReport) {
  SeedEnvGuard guard;
  const auto r = run({"lipschitz-sweep", "--trials", "100", "--dim", "8", "--m", "4", "--p", "1.5", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["report"]["summary"]["violations"], 0);
  EXPECT_EQ(j["report"]["trials"].size(), 100u);
  EXPECT_EQ(j["config"]["seed"], 1);
}

TEST(Cli, AssertionFailureExitsOne) {
  SeedEnvGuard guard;
  const auto r = run({"lipschitz-sweep", "--trials", "5", "--tol", "-1", "--deterministic"});
  EXPECT_EQ(r.code, ccalc::cli::kAssertionFailure);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_GT(j["report"]["summary"]["violations"].get<int>(), 0);
}

TEST(Cli, DeterministicOutputIsByteIdentical) {
  SeedEnvGuard guard;
  const std::vector<std::string> args{"lipschitz-sweep", "--trials", "20", "--seed", "3", "--deterministic"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).count("generated_at"), 0u);
  const auto c = run({"lipschitz-sweep", "--trials", "20", "--seed", "3", "--deterministic", "--jobs", "1"});
  EXPECT_EQ(json::parse(a.out)["report"], json::parse(c.out)["report"]);
}

TEST(Cli, EnvironmentSeedOverridesFlag) {
  SeedEnvGuard guard;
  const auto want = run({"lipschitz-sweep", "--trials", "10", "--seed", "5", "--deterministic"});
  setenv("CONTRACTION_CALC_SEED", "5", 1);
  const auto got = run({"lipschitz-sweep", "--trials", "10", "--seed", "1", "--deterministic"});
  EXPECT_EQ(want.out, got.out);
  setenv("CONTRACTION_CALC_SEED", "five", 1);
  EXPECT_EQ(run({"lipschitz-sweep", "--trials", "2"}).code, 2);
}

TEST(Cli, CsvFormat) {
  SeedEnvGuard guard;
  const auto r = run({"lipschitz-sweep", "--trials", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "seed,m,dim,p,lhs,rhs,ratio");
  int rows = 0;
  while (std::getline(is, line)) rows += !line.empty();
  EXPECT_EQ(rows, 3);
}

TEST(Cli, OutputFileAndFixtures) {
  const auto dir = temp_dir("fixtures");
  const auto report = dir / "report.json";
  const auto r = run({"counterexample", "--m", "3", "--p", "4", "--fixtures", (dir / "fx").string(),
                      "--output", report.string(), "--deterministic"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(report);
  const json j = json::parse(f);
  EXPECT_EQ(j["report"]["m"], 3);
  for (const char* name : {"U1.json", "U2.json", "V.json", "f.json"})
    EXPECT_TRUE(std::filesystem::exists(dir / "fx" / name)) << name;
  std::ifstream u((dir / "fx" / "U1.json").string());
  const json uj = json::parse(u);
  EXPECT_EQ(uj["rows"], 3);
  std::filesystem::remove_all(dir);
}

TEST(Cli, BesovNormFromFile) {
  const auto dir = temp_dir("besov");
  const auto path = dir / "f.json";
  std::ofstream(path) << R"({"d1":0,"d2":8,"coeffs":[[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[1,0]]]})";
  const auto r = run({"besov-norm", "--input", path.string(), "--deterministic"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["report"]["besov_norm"].get<double>(), 8.0, 1e-12);
  EXPECT_NEAR(j["report"]["projective_bound"].get<double>(), 1.0, 1e-12);
  ASSERT_EQ(j["report"]["blocks"].size(), 1u);
  EXPECT_EQ(j["report"]["blocks"][0]["n"], 3);
  std::ofstream(path) << "{ not json";
  EXPECT_EQ(run({"besov-norm", "--input", path.string()}).code, 2);
  EXPECT_EQ(run({"besov-norm", "--input", (dir / "missing.json").string()}).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, OtherSubcommandsPass) {
  SeedEnvGuard guard;
  EXPECT_EQ(run({"verify-identities", "--m", "5", "--dim", "6", "--trials", "5"}).code, 0);
  EXPECT_EQ(run({"derivative-check", "--trials", "3"}).code, 0);
  const auto b = run({"blowup-table", "--m-list", "4,8", "--p-list", "4,inf", "--deterministic"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(json::parse(b.out)["report"]["rows"].size(), 4u);
  const auto s = run({"besov-sweep", "--trials", "8", "--m-list", "2,4", "--deterministic"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["report"]["summary"]["max_constant_by_m"].size(), 2u);
}
