#include "rodeo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rodeo/bounds.hpp"
#include "rodeo/errors.hpp"
#include "rodeo/io.hpp"
#include "rodeo/qsim.hpp"
#include "rodeo/rra.hpp"
#include "rodeo/superiter.hpp"
#include "rodeo/wam.hpp"

#ifndef RODEO_DATA_DIR
#define RODEO_DATA_DIR "data"
#endif

namespace rodeo::cli {

namespace {

using io::Json;

constexpr std::size_t kMaxGridPoints = 10'000'000;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(const std::string& s) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + t + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw UsageError("not a number: '" + t + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

// Emit a numeric table in the selected format.
std::string emit_table(io::Format format, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  if (format == io::Format::json) return render(io::table_to_json(header, rows));
  std::ostringstream os;
  io::write_csv(os, header, rows);
  return os.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

// ---- wam ------------------------------------------------------------------

std::string cmd_wam(const RunConfig& cfg, io::Format format) {
  require(cfg.cycles >= 1 && cfg.cycles <= 12, "--cycles must be in [1, 12]");
  require(cfg.depth >= 1 && cfg.depth <= 60, "--depth must be in [1, 60]");
  const auto rows = io::wam_table(wam_optimize(cfg.cycles, cfg.depth));
  if (format == io::Format::json) return render(io::wam_table_to_json(rows));
  std::ostringstream os;
  io::write_wam_table_csv(os, rows);
  return os.str();
}

// ---- rra ------------------------------------------------------------------

std::string cmd_rra(const RunConfig& cfg, io::Format format) {
  if (cfg.separatrix) {
    std::vector<std::vector<double>> rows;
    Json j = Json::array();
    std::ostringstream os;
    os << "statistic,alpha,beta\n";
    for (Statistic s : {Statistic::arithmetic, Statistic::geometric, Statistic::rms}) {
      const SeparatrixFit fit = separatrix_fit_for(s);
      os << to_string(s) << ',' << io::format_double(fit.alpha) << ','
         << io::format_double(fit.beta) << '\n';
      j.push_back({{"statistic", std::string(to_string(s))}, {"alpha", fit.alpha}, {"beta", fit.beta}});
    }
    return format == io::Format::json ? render(Json{{"fits", j}}) : os.str();
  }

  const std::vector<double> zetas = parse_grid(cfg.zeta);
  for (double z : zetas) require(z >= 0, "--zeta values must be >= 0");

  if (cfg.fits) {
    std::vector<std::vector<double>> rows;
    for (double z : zetas) {
      rows.push_back({z, separatrix_bound(Statistic::arithmetic, z),
                      separatrix_bound(Statistic::rms, z),
                      separatrix_bound(Statistic::geometric, z)});
    }
    return emit_table(format, {"zeta_tot", "arithmetic", "rms", "geometric"}, rows);
  }

  const std::vector<int> ns = parse_int_list(cfg.n_list);
  for (int n : ns) require(n >= 1 && n <= 100000, "--n values must be in [1, 100000]");

  if (cfg.single_run) {
    require(ns.size() == 1, "--single-run takes exactly one --n");
    const Schedule schedule =
        sample_schedule(ns[0], HalfNormalTimeDistribution(1.0), StreamId{cfg.seed, 0});
    const double reference = std::pow(0.25, ns[0]);
    std::vector<std::vector<double>> rows;
    for (double z : zetas) rows.push_back({z, schedule_suppression(schedule, z), reference});
    return emit_table(format, {"zeta", "s", "quarter_power"}, rows);
  }

  std::vector<io::RraRow> rows;
  for (int n : ns) {
    for (double z : zetas) {
      const double per = cfg.total ? z / n : z;
      io::RraRow row{z, n, {}, {}, {}, {}, {}, {}};
      if (cfg.trials > 0) {
        const MonteCarloStatistics mc =
            monte_carlo_statistics(per, n, cfg.trials, cfg.seed, cfg.threads);
        row.mean = mc.arithmetic_mean;
        row.geomean = mc.geometric_mean;
        row.rms = mc.rms;
        row.sigma_over_mean = mc.sigma_over_mean;
        row.median = mc.median;
        row.stderr_mean = mc.stderr_mean;
      } else {
        const EnsembleStatistics st = rra_closed_form_statistics(per, n);
        row.mean = st.arithmetic_mean;
        row.geomean = st.geometric_mean;
        row.rms = st.rms;
        row.sigma_over_mean = st.sigma_over_mean;
      }
      rows.push_back(row);
    }
  }
  if (format == io::Format::json) return render(io::rra_rows_to_json(rows));
  std::ostringstream os;
  io::write_rra_csv(os, rows);
  return os.str();
}

// ---- super ----------------------------------------------------------------

std::string cmd_super(const RunConfig& cfg, io::Format format) {
  require(cfg.depth >= 1 && cfg.depth <= 60, "--depth must be in [1, 60]");
  if (cfg.max_energy) {
    return emit_table(format, {"depth", "e_max"},
                      {{static_cast<double>(cfg.depth), max_valid_energy(cfg.depth)}});
  }
  require(cfg.base_time > 0, "--base must be > 0");
  require(cfg.compare_n >= 1, "--compare-n must be >= 1");
  const std::vector<double> xs = parse_grid(cfg.x_grid);
  std::vector<std::vector<double>> rows;
  for (double x : xs) {
    require(x >= 0, "--x values must be >= 0");
    const double z = x * cfg.base_time;
    const double s = cfg.truncated ? truncated_super_suppression(z, cfg.depth) : super_suppression(z);
    const double r = rra_mean_total(z, cfg.compare_n);
    rows.push_back({x, s, r, s > 0 ? r / s : std::numeric_limits<double>::infinity()});
  }
  return emit_table(format, {"x", "super", "rra_mean", "ratio"}, rows);
}

// ---- bound ----------------------------------------------------------------

std::string cmd_bound(const RunConfig& cfg, io::Format format) {
  require(cfg.depth >= 1 && cfg.depth <= 60, "--depth must be in [1, 60]");

  if (!cfg.spectrum_path.empty()) {
    require(cfg.cycles >= 1 && cfg.cycles <= 12, "--cycles must be in [1, 12]");
    require(cfg.threshold > 0, "--threshold must be > 0");
    const DiscreteSpectrum spectrum = io::load_spectrum(cfg.spectrum_path);
    const WamState state = wam_optimize(cfg.cycles, cfg.depth);
    std::vector<TableEntry> table;
    for (const auto& snap : state.history) {
      table.push_back({"wam-" + std::to_string(snap.times.size()),
                       super_profile(SuperSchedule::from_bases(snap.times, cfg.depth)),
                       SuperSchedule::from_bases(snap.times, cfg.depth).total()});
    }
    const TableSelection sel = exact_SE_from_table(spectrum, table, cfg.threshold);
    const std::size_t idx = sel.found ? sel.index : sel.best_index;
    Json j{{"found", sel.found},
           {"schedule_id", table[idx].id},
           {"total_time", table[idx].total_time},
           {"S_E", sel.found ? sel.suppression : sel.best_suppression},
           {"threshold", cfg.threshold}};
    if (format == io::Format::json) return render(j);
    std::ostringstream os;
    os << "found,schedule_id,total_time,S_E,threshold\n"
       << (sel.found ? 1 : 0) << ',' << table[idx].id << ','
       << io::format_double(table[idx].total_time) << ','
       << io::format_double(sel.found ? sel.suppression : sel.best_suppression) << ','
       << io::format_double(cfg.threshold) << '\n';
    return os.str();
  }

  require(cfg.table_row >= 1 && cfg.table_row <= 12, "--n must be in [1, 12]");
  const WamState state = wam_optimize(cfg.table_row, cfg.depth);
  const SuppressionProfile profile = state.profile();

  if (cfg.curve) {
    const std::vector<double> xs = parse_grid(cfg.x_grid);
    for (double x : xs) require(x >= 1, "--x values must be >= 1");
    const double hi = *std::max_element(xs.begin(), xs.end());
    const MonotoneEnvelope env = monotone_envelope(profile, 1.0, std::max(hi, 1.0 + 1e-9));
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x, profile(x), env(x)});
    return emit_table(format, {"x", "s", "s_ub"}, rows);
  }

  require(cfg.f >= 0 && cfg.f <= 1, "--f must be in [0, 1]");
  require(cfg.x0 >= 1, "--x0 must be >= 1");
  const MonotoneEnvelope env = monotone_envelope(profile, 1.0, std::max(cfg.x_max, cfg.x0));
  const io::BoundReport report{cfg.f, cfg.x0, partial_info_bound(env, {cfg.f, cfg.x0}),
                               worst_case_bound(state), "wam-" + std::to_string(cfg.table_row)};
  if (format == io::Format::json) return render(io::bound_report_to_json(report));
  std::ostringstream os;
  os << "f,x0,bound,Q,schedule_id\n"
     << io::format_double(report.f) << ',' << io::format_double(report.x0) << ','
     << io::format_double(report.bound) << ',' << io::format_double(report.q) << ','
     << report.schedule_id << '\n';
  return os.str();
}

// ---- simulate -------------------------------------------------------------

Schedule load_schedule(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    try {
      return io::schedule_from_json(Json::parse(io::read_file(spec)));
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("bad schedule JSON: ") + e.what());
    }
  }
  return Schedule(parse_grid(spec));
}

// p_g + sum_c w_c s_c, valid for any x >= 0
double closed_form_success(const PhysicalState& state, const Schedule& schedule) {
  double p = 0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    p += std::norm(state.amplitudes()[i]) * schedule_suppression(schedule, state.energies()[i]);
  }
  return p;
}

std::string cmd_simulate(const RunConfig& cfg, io::Format format) {
  PhysicalState state = [&] {
    if (!cfg.state_path.empty()) {
      try {
        return io::physical_state_from_json(Json::parse(io::read_file(cfg.state_path)));
      } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("bad state JSON: ") + e.what());
      }
    }
    require(cfg.dim >= 1 && cfg.dim <= kMaxStateDim, "--dim must be in [1, 16384]");
    return random_physical_state(cfg.dim, StreamId{cfg.seed, 0});
  }();
  const Schedule schedule = load_schedule(cfg.schedule);

  if (cfg.trajectories > 0) {
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < cfg.trajectories; ++t) {
      if (run_trajectory(state, schedule, StreamId{cfg.seed, t + 1}).success) ++successes;
    }
    const double n = static_cast<double>(cfg.trajectories);
    const double rate = static_cast<double>(successes) / n;
    const double p = closed_form_success(state, schedule);
    return emit_table(format,
                      {"trajectories", "successes", "empirical_rate", "stderr", "closed_form"},
                      {{n, static_cast<double>(successes), rate, std::sqrt(p * (1 - p) / n), p}});
  }

  std::vector<std::vector<double>> rows;
  for (Eigen::Index c = 1; c < state.dim(); ++c) {
    if (std::norm(state.amplitudes()[c]) == 0) continue;
    rows.push_back({static_cast<double>(c), state.energies()[c], std::norm(state.amplitudes()[c]),
                    suppression_via_simulation(state, schedule, c),
                    schedule_suppression(schedule, state.energies()[c])});
  }
  return emit_table(format, {"component", "x", "weight", "s_simulated", "s_closed_form"}, rows);
}

// ---- verify ---------------------------------------------------------------

std::string verify_report(const std::vector<CheckResult>& results, bool& all_passed) {
  std::ostringstream os;
  all_passed = true;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) os << ": " << r.detail;
    os << '\n';
    all_passed = all_passed && r.passed;
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](auto& r) { return r.passed; });
  os << passed << '/' << results.size() << " checks passed\n";
  return os.str();
}

std::string describe(double value, double limit) {
  std::ostringstream os;
  os << "max deviation " << value << " (limit " << limit << ")";
  return os.str();
}

std::complex<double> half_phase_sum(double x, double tau) {
  const double z = 2 * x * tau;
  return 0.5 * (1.0 + std::complex<double>(cos_pi(z), -sin_pi(z)));
}

void qsim_checks(std::uint64_t seed, std::vector<CheckResult>& results) {
  double prob_err = 0, amp_err = 0, density_err = 0, ground_err = 0, unitary_err = 0,
         supp_err = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    RngStream rng(StreamId{seed, 1000 + trial});
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng.uniform() * 8);
    const int len = 1 + static_cast<int>(rng.uniform() * 6);
    std::vector<double> times;
    for (int j = 0; j < len; ++j) times.push_back(0.05 + 1.95 * rng.uniform());
    const Schedule schedule(times);
    const PhysicalState state = random_physical_state(dim, StreamId{seed, trial});

    PhysicalState current = state;
    double p_total = 1;
    Eigen::VectorXcd expected = state.amplitudes();
    for (double tau : times) {
      const IterationOutcome step = apply_iteration(current, tau);
      p_total *= step.success_probability;
      for (Eigen::Index i = 0; i < dim; ++i) expected[i] *= half_phase_sum(state.energies()[i], tau);

      const ReducedDensityCheck rd = verify_reduced_density(current, tau);
      density_err = std::max(density_err, rd.mixture_residual);
      ground_err = std::max(ground_err, rd.ground_population_error);

      const CompositeState circuit = run_iteration_circuit(current, tau);
      const Eigen::VectorXcd direct =
          iteration_unitary(current.energies(), tau) * CompositeState(current).amplitudes();
      unitary_err = std::max(unitary_err, (direct - circuit.amplitudes()).norm());
      current = *step.post_success;
    }
    prob_err = std::max(prob_err, std::abs(p_total - success_probability(state.spectrum(), schedule)));
    expected.normalize();
    amp_err = std::max(amp_err, 1 - std::abs(expected.dot(current.amplitudes())));

    for (Eigen::Index c = 1; c < dim; ++c) {
      const double sim = suppression_via_simulation(state, schedule, c);
      supp_err = std::max(supp_err, std::abs(sim - schedule_suppression(schedule, state.energies()[c])));
    }
  }
  results.push_back({"qsim.success_probability", prob_err <= 1e-12, describe(prob_err, 1e-12)});
  results.push_back({"qsim.post_selected_amplitudes", amp_err <= 1e-12, describe(amp_err, 1e-12)});
  results.push_back({"qsim.reduced_density", density_err <= 1e-12, describe(density_err, 1e-12)});
  results.push_back({"qsim.ground_conservation", ground_err <= 1e-12, describe(ground_err, 1e-12)});
  results.push_back({"qsim.unitary_equivalence", unitary_err <= 1e-12, describe(unitary_err, 1e-12)});
  results.push_back({"qsim.suppression_ratio", supp_err <= 1e-10, describe(supp_err, 1e-10)});
}

void super_checks(std::uint64_t seed, std::vector<CheckResult>& results) {
  const Peak peak = find_worst_peak_above_gap({1.0});
  const bool peak_ok = std::abs(peak.value - 4.719e-2) <= 1e-4 && std::abs(peak.location - 1.43029) <= 1e-3;
  std::ostringstream peak_detail;
  peak_detail.precision(8);
  peak_detail << "peak " << peak.value << " at x = " << peak.location;
  results.push_back({"super.bessel_peak", peak_ok, peak_detail.str()});

  RngStream rng(StreamId{seed, 7});
  double err = 0;
  for (int i = 0; i < 1000; ++i) {
    const double zeta = 1e3 * rng.uniform();
    const int depth = 1 + static_cast<int>(rng.uniform() * 40);
    double product = 1;
    for (int k = 1; k <= depth; ++k) {
      const double c = cos_pi(std::ldexp(zeta, -k));
      product *= c * c;
    }
    err = std::max(err, std::abs(product - truncated_super_suppression(zeta, depth)));
  }
  results.push_back({"super.truncated_closed_form", err <= 1e-10, describe(err, 1e-10)});

  const double e15 = max_valid_energy(15);
  results.push_back({"super.max_valid_energy", e15 >= 40308 && e15 <= 40309,
                     "E_max(15) = " + io::format_double(e15)});
}

void golden_checks(const std::string& path, std::vector<CheckResult>& results) {
  std::vector<io::WamTableRow> golden;
  try {
    std::istringstream in(io::read_file(path));
    golden = io::read_wam_table_csv(in);
  } catch (const std::exception& e) {
    results.push_back({"golden.load", false, e.what()});
    return;
  }
  if (golden.empty()) {
    results.push_back({"golden.load", false, "no rows in " + path});
    return;
  }
  int cycles = 0;
  for (const auto& row : golden) cycles = std::max(cycles, row.n);
  if (cycles < 1 || cycles > 12) {
    results.push_back({"golden.load", false, "row counts must be in [1, 12]"});
    return;
  }
  const auto computed = io::wam_table(wam_optimize(cycles));
  for (const auto& row : golden) {
    const std::string name = "golden.row" + std::to_string(row.n);
    if (row.n < 1 || static_cast<std::size_t>(row.n) > computed.size()) {
      results.push_back({name, false, "no such row"});
      continue;
    }
    const auto& got = computed[static_cast<std::size_t>(row.n - 1)];
    std::ostringstream why;
    bool ok = row.times.size() == got.times.size();
    if (!ok) why << "expected " << row.times.size() << " times, got " << got.times.size();
    for (std::size_t k = 0; ok && k < row.times.size(); ++k) {
      if (std::abs(row.times[k] - got.times[k]) > 2e-3) {
        ok = false;
        why << "t" << k + 1 << " = " << got.times[k] << " vs " << row.times[k];
      }
    }
    if (ok && std::abs(row.total_time - got.total_time) > 5e-3) {
      ok = false;
      why << "total " << got.total_time << " vs " << row.total_time;
    }
    if (ok && std::abs(got.q - row.q) > 0.05 * std::abs(row.q)) {
      ok = false;
      why << "Q " << got.q << " vs " << row.q;
    }
    results.push_back({name, ok, why.str()});
  }
}

std::string cmd_verify(const RunConfig& cfg, bool& all_passed) {
  const std::string golden = cfg.golden_path.empty()
                                 ? std::string(RODEO_DATA_DIR) + "/wam_golden.csv"
                                 : cfg.golden_path;
  return verify_report(run_verification(cfg.only, cfg.seed, golden), all_passed);
}

// ---- config ---------------------------------------------------------------

std::string json_scalar_to_arg(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) return io::format_double(v.get<double>());
  throw UsageError("config values must be strings, numbers, booleans or arrays");
}

// Config keys become flags ahead of the user's own flags, so the latter win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      require(i + 1 < args.size(), "--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  Json config;
  try {
    config = Json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("bad config JSON: ") + e.what());
  }
  require(config.is_object(), "config file must hold a JSON object");

  std::vector<std::string> injected;
  for (const auto& [key, value] : config.items()) {
    if (key == "command") continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
      continue;
    }
    injected.push_back(flag);
    if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) joined += (joined.empty() ? "" : ",") + json_scalar_to_arg(e);
      injected.push_back(joined);
    } else {
      injected.push_back(json_scalar_to_arg(value));
    }
  }
  std::size_t at = 0;
  if (!args.empty() && args[0].rfind("-", 0) != 0) {
    at = 1;
  } else if (config.contains("command")) {
    args.insert(args.begin(), config["command"].get<std::string>());
    at = 1;
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", cfg.seed, "Random seed");
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const std::string s = trim(spec);
  require(!s.empty(), "empty grid specification");
  if (s.find(':') != std::string::npos) {
    const auto parts = split(s, ':');
    require(parts.size() == 3, "grid must look like start:stop:step");
    const double a = to_double(parts[0]), b = to_double(parts[1]), step = to_double(parts[2]);
    require(step > 0 && b >= a, "grid needs step > 0 and stop >= start");
    const double count = std::floor((b - a) / step + 1e-9) + 1;
    require(count <= static_cast<double>(kMaxGridPoints), "grid has too many points");
    std::vector<double> out;
    for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_double(p));
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  for (const auto& p : split(trim(spec), ',')) {
    const double v = to_double(p);
    require(v == std::floor(v) && std::abs(v) < 1e9, "expected an integer, got '" + trim(p) + "'");
    out.push_back(static_cast<int>(v));
  }
  require(!out.empty(), "empty integer list");
  return out;
}

std::vector<CheckResult> run_verification(const std::string& only, std::uint64_t seed,
                                          const std::string& golden_path) {
  if (!only.empty() && only != "qsim" && only != "super" && only != "golden") {
    throw UsageError("--only must be qsim, super or golden");
  }
  std::vector<CheckResult> results;
  if (only.empty() || only == "qsim") qsim_checks(seed, results);
  if (only.empty() || only == "super") super_checks(seed, results);
  if (only.empty() || only == "golden") golden_checks(golden_path, results);
  return results;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Schedule design and verification for rodeo ground-state projection", "rodeo"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* wam = app.add_subcommand("wam", "Whac-a-Mole super-iteration schedules (table of Q and times)");
  wam->add_option("--cycles", cfg.cycles, "Number of super iterations (1-12)");
  wam->add_option("--depth", cfg.depth, "Rungs per super iteration");
  add_common(wam, cfg);

  auto* rra = app.add_subcommand("rra", "Random-schedule ensemble statistics");
  rra->add_option("--zeta", cfg.zeta, "Grid start:stop:step or comma list");
  rra->add_option("--n", cfg.n_list, "Comma-separated iteration counts");
  rra->add_option("--trials", cfg.trials, "Monte Carlo trials (0 = closed forms)");
  rra->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
  rra->add_flag("--separatrix", cfg.separatrix, "Print the alpha/beta fits");
  rra->add_flag("--fits", cfg.fits, "Best bound per statistic against zeta_tot");
  rra->add_flag("--total", cfg.total, "Interpret --zeta as the total phase count");
  rra->add_flag("--single-run", cfg.single_run, "Suppression of one sampled schedule");
  add_common(rra, cfg);

  auto* super = app.add_subcommand("super", "Super-iteration suppression and validity limits");
  super->add_option("--x", cfg.x_grid, "Energy grid start:stop:step or comma list");
  super->add_option("--base", cfg.base_time, "Base time of the super iteration");
  super->add_option("--compare-n", cfg.compare_n, "Iterations of the random schedule compared against");
  super->add_option("--depth", cfg.depth, "Rungs (with --truncated or --max-energy)");
  super->add_flag("--truncated", cfg.truncated, "Use the finite-depth ladder");
  super->add_flag("--max-energy", cfg.max_energy, "Print E_max for --depth");
  add_common(super, cfg);

  auto* bound = app.add_subcommand("bound", "Monotone envelope and partial-information bounds");
  bound->add_option("--n", cfg.table_row, "Table row (number of super iterations)");
  bound->add_option("--f", cfg.f, "Fraction of excited weight at x >= x0");
  bound->add_option("--x0", cfg.x0, "Energy ratio above which the fraction f lies");
  bound->add_option("--x-max", cfg.x_max, "Right end of the envelope grid");
  bound->add_option("--x", cfg.x_grid, "Grid for --curve");
  bound->add_option("--depth", cfg.depth, "Rungs per super iteration");
  bound->add_flag("--curve", cfg.curve, "Emit x, s, s_ub");
  bound->add_option("--spectrum", cfg.spectrum_path, "Spectrum file (CSV or JSON) for table lookup");
  bound->add_option("--threshold", cfg.threshold, "Required S_E for table lookup");
  bound->add_option("--cycles", cfg.cycles, "Table rows for lookup");
  add_common(bound, cfg);

  auto* sim = app.add_subcommand("simulate", "Statevector simulation against the closed forms");
  sim->add_option("--state", cfg.state_path, "PhysicalState JSON (default: random)");
  sim->add_option("--dim", cfg.dim, "Dimension of the random state");
  sim->add_option("--schedule", cfg.schedule, "Comma list of times or schedule JSON");
  sim->add_option("--trajectories", cfg.trajectories, "Sampled trajectories (0 = per-component suppression)");
  add_common(sim, cfg);

  auto* verify = app.add_subcommand("verify", "Cross-module oracle checks and the golden WAM table");
  verify->add_option("--only", cfg.only, "qsim, super or golden");
  verify->add_option("--golden", cfg.golden_path, "Golden WAM table CSV");
  add_common(verify, cfg);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    const io::Format format = io::parse_format(cfg.format);
    std::string text;
    int code = kExitOk;
    if (wam->parsed()) {
      text = cmd_wam(cfg, format);
    } else if (rra->parsed()) {
      text = cmd_rra(cfg, format);
    } else if (super->parsed()) {
      text = cmd_super(cfg, format);
    } else if (bound->parsed()) {
      text = cmd_bound(cfg, format);
    } else if (sim->parsed()) {
      text = cmd_simulate(cfg, format);
    } else if (verify->parsed()) {
      bool all_passed = true;
      text = cmd_verify(cfg, all_passed);
      code = all_passed ? kExitOk : kExitCheckFailed;
    }
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      io::write_file(cfg.out_path, text);
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace rodeo::cli
