#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rodeo/cli.hpp"
#include "rodeo/io.hpp"

namespace {

namespace cli = rodeo::cli;
namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& contents) {
  const fs::path p = fs::temp_directory_path() / ("rodeo_cli_test_" + name);
  std::ofstream(p) << contents;
  return p;
}

TEST(Grid, Parsing) {
  EXPECT_EQ(cli::parse_grid("0:1:0.25"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
  EXPECT_EQ(cli::parse_grid("0:10:0.01").size(), 1001u);
  EXPECT_EQ(cli::parse_grid("3"), std::vector<double>{3});
  EXPECT_EQ(cli::parse_grid("1,2.5"), (std::vector<double>{1, 2.5}));
  EXPECT_THROW(cli::parse_grid("1:0:0.1"), rodeo::UsageError);
  EXPECT_THROW(cli::parse_grid("a:b"), rodeo::UsageError);
  EXPECT_EQ(cli::parse_int_list("1,3,6"), (std::vector<int>{1, 3, 6}));
  EXPECT_THROW(cli::parse_int_list("1.5"), rodeo::UsageError);
}

TEST(Cli, WamTable) {
  const auto r = run({"wam", "--cycles", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const auto rows = rodeo::io::read_wam_table_csv(in);
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& want = oracle::kTableII[i];
    EXPECT_NEAR(rows[i].q, want.q, 0.05 * want.q);
    EXPECT_NEAR(rows[i].total_time, want.total, 5e-3);
    for (std::size_t k = 0; k < want.times.size(); ++k) EXPECT_NEAR(rows[i].times[k], want.times[k], 2e-3);
  }
}

TEST(Cli, WamJson) {
  const auto r = run({"wam", "--cycles", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = rodeo::io::Json::parse(r.out);
  EXPECT_NEAR(j["rows"][2]["Q"].get<double>(), 2.421e-5, 0.05 * 2.421e-5);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"wam", "--cycles", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"wam", "--cycles", "13"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"wam", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"rra", "--zeta", "5:1:1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, RraClosedFormCurves) {
  const auto r = run({"rra", "--zeta", "0:10:0.01", "--n", "6", "--trials", "0"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "zeta,n,mean,geomean,rms,sigma_over_mean,median,stderr_mean");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.size() - 2), ",,");
  }
  EXPECT_EQ(rows, 1001);
}

TEST(Cli, RraSeparatrix) {
  const auto r = run({"rra", "--separatrix", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = rodeo::io::Json::parse(r.out);
  EXPECT_EQ(j["fits"][0]["statistic"], "arithmetic");
  EXPECT_NEAR(j["fits"][0]["alpha"].get<double>(), 4.271, 1e-3);
  EXPECT_NEAR(j["fits"][0]["beta"].get<double>(), 2.244, 1e-3);
  EXPECT_NEAR(j["fits"][2]["beta"].get<double>(), 1.637, 1e-3);
}

TEST(Cli, RraMonteCarloMatchesClosedForm) {
  const auto r = run({"rra", "--zeta", "3", "--n", "6", "--trials", "1000000", "--seed", "7", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto row = rodeo::io::Json::parse(r.out)["rows"][0];
  const double mean = std::pow((1 + std::exp(-oracle::kPi3 * 9)) / 2, 6);
  EXPECT_NEAR(row["mean"].get<double>(), mean, 3 * row["stderr_mean"].get<double>());
}

TEST(Cli, PlotDataOutputs) {
  const auto totals = run({"rra", "--total", "--zeta", "0:8:0.5", "--n", "1,2,3"});
  ASSERT_EQ(totals.code, 0);
  EXPECT_NE(totals.out.find("\n8,3,"), std::string::npos);
  const auto fits = run({"rra", "--fits", "--zeta", "0:10:1"});
  ASSERT_EQ(fits.code, 0);
  EXPECT_EQ(fits.out.substr(0, 32), "zeta_tot,arithmetic,rms,geometri");
  const auto single = run({"rra", "--single-run", "--n", "6", "--zeta", "2:10:0.01", "--seed", "3"});
  ASSERT_EQ(single.code, 0);
  EXPECT_EQ(single.out.substr(0, 21), "zeta,s,quarter_power\n");
  const auto ladder = run({"super", "--x", "1:20:0.01"});
  ASSERT_EQ(ladder.code, 0);
  EXPECT_EQ(ladder.out.substr(0, 22), "x,super,rra_mean,ratio");
  const auto curve = run({"bound", "--n", "3", "--curve", "--x", "1:10:0.01"});
  ASSERT_EQ(curve.code, 0);
  EXPECT_EQ(curve.out.substr(0, 9), "x,s,s_ub\n");
}

TEST(Cli, SuperMaxEnergy) {
  const auto r = run({"super", "--max-energy", "--depth", "15"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 15), "depth,e_max\n15,");
  const double e = std::stod(r.out.substr(15));
  EXPECT_GE(e, 40308);
  EXPECT_LE(e, 40309);
}

TEST(Cli, BoundReport) {
  const auto r = run({"bound", "--n", "3", "--f", "0.99", "--x0", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = rodeo::io::Json::parse(r.out);
  EXPECT_NEAR(j["bound"].get<double>(), 5.591e-7, 0.02 * 5.591e-7);
  EXPECT_EQ(j["schedule_id"], "wam-3");
  EXPECT_EQ(run({"bound", "--f", "1.5"}).code, cli::kExitUsage);
}

TEST(Cli, BoundTableLookup) {
  const auto spec = temp_file("spectrum.csv", "# ground_weight=0.2\nenergy_ratio,weight\n3,0.8\n");
  const auto r = run({"bound", "--spectrum", spec.string(), "--threshold", "1e-6", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = rodeo::io::Json::parse(r.out);
  EXPECT_TRUE(j["found"].get<bool>());
  EXPECT_LE(j["S_E"].get<double>(), 1e-6);
  fs::remove(spec);
}

TEST(Cli, SimulateAgreesWithClosedForm) {
  const auto r = run({"simulate", "--dim", "5", "--schedule", "0.5,0.9,1.3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : rodeo::io::Json::parse(r.out)["rows"]) {
    EXPECT_NEAR(row["s_simulated"].get<double>(), row["s_closed_form"].get<double>(), 1e-10);
  }
  const auto t = run({"simulate", "--dim", "4", "--schedule", "0.5,0.9", "--trajectories", "20000", "--format", "json"});
  ASSERT_EQ(t.code, 0);
  const auto row = rodeo::io::Json::parse(t.out)["rows"][0];
  EXPECT_NEAR(row["empirical_rate"].get<double>(), row["closed_form"].get<double>(), 3 * row["stderr"].get<double>());
}

TEST(Cli, SimulateStateFile) {
  const auto state = temp_file("state.json", R"({"energies": [0, 2], "amplitudes": [[1, 0], [0, 0]]})");
  const auto r = run({"simulate", "--state", state.string(), "--schedule", "0.25", "--trajectories", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n10,10,1,0,1\n"), std::string::npos) << r.out;
  fs::remove(state);
}

TEST(Cli, VerifyPasses) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifySubset) {
  const auto r = run({"verify", "--only", "qsim"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("qsim.reduced_density"), std::string::npos);
  EXPECT_EQ(r.out.find("golden."), std::string::npos);
  EXPECT_EQ(run({"verify", "--only", "nonsense"}).code, cli::kExitUsage);
}

TEST(Cli, VerifyCorruptedGolden) {
  const std::string good = rodeo::io::read_file(std::string(RODEO_TEST_DATA_DIR) + "/wam_golden.csv");
  std::string bad = good;
  bad.replace(bad.find("0.6545"), 6, "0.7545");
  const auto path = temp_file("golden.csv", bad);
  const auto r = run({"verify", "--only", "golden", "--golden", path.string()});
  EXPECT_EQ(r.code, cli::kExitCheckFailed);
  EXPECT_NE(r.out.find("FAIL golden.row2"), std::string::npos) << r.out;
  fs::remove(path);
}

TEST(Cli, OutputFileAndDeterminism) {
  const fs::path a = fs::temp_directory_path() / "rodeo_cli_a.csv";
  const fs::path b = fs::temp_directory_path() / "rodeo_cli_b.csv";
  ASSERT_EQ(run({"rra", "--zeta", "1,2", "--n", "3", "--trials", "2000", "--seed", "5", "--out", a.string()}).code, 0);
  ASSERT_EQ(run({"rra", "--zeta", "1,2", "--n", "3", "--trials", "2000", "--seed", "5", "--out", b.string()}).code, 0);
  EXPECT_EQ(rodeo::io::read_file(a.string()), rodeo::io::read_file(b.string()));
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, ConfigFileWithOverride) {
  const auto cfg = temp_file("config.json", R"({"command": "wam", "cycles": 2, "format": "json"})");
  const auto from_config = run({"--config", cfg.string()});
  ASSERT_EQ(from_config.code, 0) << from_config.err;
  EXPECT_EQ(rodeo::io::Json::parse(from_config.out)["rows"].size(), 2u);
  const auto overridden = run({"wam", "--config", cfg.string(), "--cycles", "4"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_EQ(rodeo::io::Json::parse(overridden.out)["rows"].size(), 4u);
  fs::remove(cfg);
}

}  // namespace
