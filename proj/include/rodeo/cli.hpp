#pragma once

// In-process command-line front end. `run_cli` parses a full argument list
// (without the program name) and writes results to `out`, diagnostics to
// `err`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rodeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

struct RunConfig {
  std::string command;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 1;
  unsigned threads = 0;

  // wam / bound
  int cycles = 8;
  int depth = 32;

  // rra
  std::string zeta = "0:10:0.01";
  std::string n_list = "1,2,3,6";
  std::uint64_t trials = 0;
  bool separatrix = false;
  bool fits = false;
  bool total = false;
  bool single_run = false;

  // super
  std::string x_grid = "1:20:0.01";
  double base_time = 1;
  int compare_n = 3;
  bool truncated = false;
  bool max_energy = false;

  // bound
  int table_row = 3;
  double f = 0.99;
  double x0 = 3;
  double x_max = 20;
  bool curve = false;
  std::string spectrum_path;
  double threshold = 0;

  // simulate
  std::string state_path;
  int dim = 4;
  std::string schedule = "0.8129";
  std::uint64_t trajectories = 0;

  // verify
  std::string only;
  std::string golden_path;
};

/// Grid spec "a:b:step" (inclusive), "v1,v2,..." or a single value.
std::vector<double> parse_grid(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Cross-module checks behind `verify`. `only` selects qsim, super or golden
/// (empty = all).
std::vector<CheckResult> run_verification(const std::string& only, std::uint64_t seed,
                                          const std::string& golden_path);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rodeo::cli
