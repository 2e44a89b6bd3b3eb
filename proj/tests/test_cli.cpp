#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliRun run(const std::string& args) {
  static int counter = 0;
  const std::string stem = "cli_run_" + std::to_string(counter++);
  const std::string cmd = std::string(FPLAP_CLI_PATH) + " " + args + " > " + stem + ".out 2> " + stem + ".err";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(stem + ".out");
  r.err = slurp(stem + ".err");
  std::remove((stem + ".out").c_str());
  std::remove((stem + ".err").c_str());
  return r;
}

double first_value(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  return j["rows"][0]["value"].get<double>();
}

}  // namespace

TEST(Cli, EvalHalfLaplacianIsPi) {
  const CliRun r = run("eval --n 1 --s 0.5 --p 2 --x 0.3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(first_value(r.out), std::numbers::pi, 1e-9);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"config", "params", "rows", "summary"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, OutsideSupportIsUsageError) {
  const CliRun r = run("eval --n 1 --s 0.5 --p 2 --x 1.5");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("x outside open support"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, InvalidParametersAreUsageErrors) {
  EXPECT_EQ(run("eval --s 1.2 --p 2 --x 0.1").code, 2);
  EXPECT_EQ(run("eval --s 0.5 --p 1.5 --x 0.1").code, 2);
  EXPECT_EQ(run("eval --s abc --p 2 --x 0.1").code, 2);
  EXPECT_EQ(run("eval --s 0.5 --p 2 --x 0.1 --format xml").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, AcceptsFractions) {
  const CliRun a = run("eval --n 1 --s 1/2 --p 4 --x 0");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NEAR(first_value(a.out), 6.0 * std::numbers::ln2 - 3.0, 1e-9);
}

TEST(Cli, IdentityReportsResidual) {
  const CliRun r = run("identity --s 0.5 --p 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(std::fabs(j["summary"]["residual"].get<double>()), 1e-6);
  EXPECT_FALSE(j["rows"].empty());
}

TEST(Cli, ClosedForm) {
  const CliRun r = run("closedform --p 8 --x 0.9");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(first_value(r.out), 8.45188765267997444, 1e-13);
  EXPECT_EQ(run("closedform --p 3 --x 0.5").code, 2);
}

TEST(Cli, DeterministicOutput) {
  const CliRun a = run("sweep --n 1 --s 0.5 --p 4 --grid 0:0.9:4 --jobs 3");
  const CliRun b = run("sweep --n 1 --s 0.5 --p 4 --grid 0:0.9:4 --jobs 1");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SweepCsv) {
  const CliRun r = run("sweep --n 1 --s 0.5 --p 2 --grid 0,0.5 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("x,value,err_est,n_evals,status\n", 0), 0u);
  EXPECT_NE(r.out.find(",ok\n"), std::string::npos);
  const CliRun empty = run("sweep --grid 0:0.5:0 --format csv");
  ASSERT_EQ(empty.code, 0) << empty.err;
  EXPECT_EQ(empty.out, "x,value,err_est,n_evals,status\n");
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  {
    std::ofstream cfg("cli_config.json");
    cfg << R"({"s": 0.5, "p": 4, "x": 0.3, "abs_tol": 1e-11})";
  }
  const CliRun from_config = run("eval --config cli_config.json");
  ASSERT_EQ(from_config.code, 0) << from_config.err;
  const auto j = nlohmann::json::parse(from_config.out);
  EXPECT_EQ(j["params"]["p"].get<double>(), 4.0);
  EXPECT_EQ(j["config"]["abs_tol"].get<double>(), 1e-11);

  const CliRun flag_wins = run("eval --config cli_config.json --p 2");
  ASSERT_EQ(flag_wins.code, 0) << flag_wins.err;
  EXPECT_NEAR(first_value(flag_wins.out), std::numbers::pi, 1e-9);

  {
    std::ofstream cfg("cli_config_bad.json");
    cfg << R"({"bogus": 1})";
  }
  EXPECT_EQ(run("eval --config cli_config_bad.json").code, 2);
  EXPECT_EQ(run("eval --config does_not_exist.json").code, 4);
  std::remove("cli_config.json");
  std::remove("cli_config_bad.json");
}

TEST(Cli, UnwritableOutputIsIoError) {
  const CliRun r = run("eval --s 0.5 --p 2 --x 0.1 --out /nonexistent_dir/result.json");
  EXPECT_EQ(r.code, 4);
}

TEST(Cli, OutFileMatchesStdout) {
  const CliRun a = run("eval --s 0.5 --p 3 --x 0.2 --out cli_out.json");
  ASSERT_EQ(a.code, 0) << a.err;
  const CliRun b = run("eval --s 0.5 --p 3 --x 0.2");
  EXPECT_EQ(slurp("cli_out.json"), b.out);
  std::remove("cli_out.json");
}

TEST(Cli, NonConvergenceExitCode) {
  const CliRun r = run("eval --s 0.3 --p 3 --x 0.9 --abs-tol 1e-300 --rel-tol 1e-300");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, LspClassification) {
  const CliRun r = run("lsp --n 1 --s 0.5 --p 2 --t 1.05 --format csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("divergent"), std::string::npos);
}

TEST(Cli, CompareMethods) {
  const CliRun r = run("compare-methods --n 1 --s 0.5 --p 3 --grid 0.5,0.99");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["summary"]["all_agree"].get<bool>());
}

TEST(Cli, VerifySubset) {
  const CliRun r = run("verify --criteria 1,2,9");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("[PASS]  1 "), std::string::npos);
  EXPECT_NE(r.out.find("[PASS]  9 "), std::string::npos);
}
