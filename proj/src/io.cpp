#include "rodeo/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rodeo/errors.hpp"

namespace rodeo::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw UsageError("not a number: '" + t + "'");
  return value;
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw UsageError("unknown format '" + name + "' (expected csv or json)");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw UsageError("write failed for '" + path + "'");
}

void write_spectrum_csv(std::ostream& out, const DiscreteSpectrum& spectrum) {
  out << "# ground_weight=" << format_double(spectrum.ground_weight()) << '\n';
  out << "energy_ratio,weight\n";
  for (const auto& c : spectrum.excited()) {
    out << format_double(c.x) << ',' << format_double(c.weight) << '\n';
  }
}

DiscreteSpectrum read_spectrum_csv(std::istream& in) {
  std::optional<double> ground;
  std::vector<ExcitedComponent> excited;
  bool header_seen = false;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find("ground_weight=");
      if (eq != std::string::npos) ground = parse_double(line.substr(eq + 14));
      continue;
    }
    if (!header_seen) {
      if (line != "energy_ratio,weight") throw UsageError("spectrum CSV header must be energy_ratio,weight");
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 2) throw UsageError("spectrum CSV rows need two columns");
    excited.push_back({parse_double(cells[0]), parse_double(cells[1])});
  }
  if (!header_seen) throw UsageError("spectrum CSV is missing its header");
  if (!ground) {
    double sum = 0;
    for (const auto& c : excited) sum += c.weight;
    ground = 1 - sum;
  }
  return DiscreteSpectrum(*ground, std::move(excited));
}

Json spectrum_to_json(const DiscreteSpectrum& spectrum) {
  Json excited = Json::array();
  for (const auto& c : spectrum.excited()) excited.push_back({{"x", c.x}, {"w", c.weight}});
  return {{"ground_weight", spectrum.ground_weight()}, {"excited", excited}};
}

DiscreteSpectrum spectrum_from_json(const Json& j) {
  try {
    std::vector<ExcitedComponent> excited;
    for (const auto& c : j.at("excited")) {
      excited.push_back({c.at("x").get<double>(), c.at("w").get<double>()});
    }
    return DiscreteSpectrum(j.at("ground_weight").get<double>(), std::move(excited));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad spectrum JSON: ") + e.what());
  }
}

DiscreteSpectrum load_spectrum(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      return spectrum_from_json(Json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("bad spectrum JSON: ") + e.what());
    }
  }
  std::istringstream in(text);
  return read_spectrum_csv(in);
}

Json schedule_to_json(const Schedule& schedule) {
  return {{"times", schedule.to_vector()}, {"total", schedule.total()}};
}

Schedule schedule_from_json(const Json& j) {
  try {
    return Schedule(j.at("times").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad schedule JSON: ") + e.what());
  }
}

Json super_schedule_to_json(const SuperSchedule& schedule) {
  Json supers = Json::array();
  for (const auto& s : schedule.supers()) {
    supers.push_back({{"base_time", s.base_time}, {"depth", s.depth}});
  }
  return {{"supers", supers}, {"total", schedule.total()}};
}

SuperSchedule super_schedule_from_json(const Json& j) {
  try {
    std::vector<SuperIteration> supers;
    for (const auto& s : j.at("supers")) {
      supers.push_back({s.at("base_time").get<double>(),
                        s.contains("depth") ? s.at("depth").get<int>() : kDefaultSuperDepth});
    }
    return SuperSchedule(std::move(supers));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad super schedule JSON: ") + e.what());
  }
}

Json physical_state_to_json(const PhysicalState& state) {
  Json energies = Json::array();
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    energies.push_back(state.energies()[i]);
    amps.push_back({state.amplitudes()[i].real(), state.amplitudes()[i].imag()});
  }
  return {{"energies", energies}, {"amplitudes", amps}};
}

PhysicalState physical_state_from_json(const Json& j) {
  try {
    const auto energies = j.at("energies").get<std::vector<double>>();
    const auto& amps = j.at("amplitudes");
    if (amps.size() != energies.size()) throw UsageError("energies and amplitudes differ in length");
    Eigen::VectorXcd a(static_cast<Eigen::Index>(amps.size()));
    Eigen::VectorXd e(static_cast<Eigen::Index>(energies.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const auto pair = amps[i].get<std::vector<double>>();
      if (pair.size() != 2) throw UsageError("amplitudes must be [re, im] pairs");
      a[static_cast<Eigen::Index>(i)] = {pair[0], pair[1]};
      e[static_cast<Eigen::Index>(i)] = energies[i];
    }
    return PhysicalState(std::move(a), std::move(e));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad state JSON: ") + e.what());
  }
}

std::vector<WamTableRow> wam_table(const WamState& state) {
  std::vector<WamTableRow> rows;
  for (const auto& snap : state.history) {
    rows.push_back({static_cast<int>(snap.times.size()), snap.worst, snap.total_time, snap.times});
  }
  return rows;
}

void write_wam_table_csv(std::ostream& out, const std::vector<WamTableRow>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.times.size());
  out << "n,Q,total_time";
  for (std::size_t k = 1; k <= width; ++k) out << ",t" << k;
  out << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.q) << ',' << format_double(r.total_time);
    for (std::size_t k = 0; k < width; ++k) {
      out << ',';
      if (k < r.times.size()) out << format_double(r.times[k]);
    }
    out << '\n';
  }
}

std::vector<WamTableRow> read_wam_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line).rfind("n,Q,total_time", 0) != 0) {
    throw UsageError("WAM table header must start with n,Q,total_time");
  }
  std::vector<WamTableRow> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line, ',');
    if (cells.size() < 3) throw UsageError("WAM table row too short");
    WamTableRow row;
    row.n = static_cast<int>(parse_double(cells[0]));
    row.q = parse_double(cells[1]);
    row.total_time = parse_double(cells[2]);
    for (std::size_t k = 3; k < cells.size(); ++k) {
      if (!trim(cells[k]).empty()) row.times.push_back(parse_double(cells[k]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json wam_table_to_json(const std::vector<WamTableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n}, {"Q", r.q}, {"total_time", r.total_time}, {"times", r.times}});
  }
  return {{"rows", out}};
}

void write_envelope_csv(std::ostream& out, const MonotoneEnvelope& envelope) {
  out << "x,s_ub\n";
  for (const auto& b : envelope.breakpoints()) {
    out << format_double(b.x) << ',' << format_double(b.s_ub) << '\n';
  }
}

Json bound_report_to_json(const BoundReport& r) {
  return {{"f", r.f}, {"x0", r.x0}, {"bound", r.bound}, {"Q", r.q}, {"schedule_id", r.schedule_id}};
}

void write_rra_csv(std::ostream& out, const std::vector<RraRow>& rows) {
  out << "zeta,n,mean,geomean,rms,sigma_over_mean,median,stderr_mean\n";
  for (const auto& r : rows) {
    out << format_double(r.zeta) << ',' << r.n << ',' << cell(r.mean) << ',' << cell(r.geomean)
        << ',' << cell(r.rms) << ',' << cell(r.sigma_over_mean) << ',' << cell(r.median) << ','
        << cell(r.stderr_mean) << '\n';
  }
}

Json rra_rows_to_json(const std::vector<RraRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"zeta", r.zeta},
                   {"n", r.n},
                   {"mean", optional_json(r.mean)},
                   {"geomean", optional_json(r.geomean)},
                   {"rms", optional_json(r.rms)},
                   {"sigma_over_mean", optional_json(r.sigma_over_mean)},
                   {"median", optional_json(r.median)},
                   {"stderr_mean", optional_json(r.stderr_mean)}});
  }
  return {{"rows", out}};
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

Json table_to_json(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) obj[header[i]] = row[i];
    out.push_back(obj);
  }
  return {{"columns", header}, {"rows", out}};
}

}  // namespace rodeo::io
