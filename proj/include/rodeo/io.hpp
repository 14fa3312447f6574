#pragma once

// CSV / JSON readers and writers for the library's records. Numbers are
// written with 17 significant digits, '.' decimal and LF line endings.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rodeo/bounds.hpp"
#include "rodeo/core.hpp"
#include "rodeo/qsim.hpp"
#include "rodeo/rra.hpp"
#include "rodeo/superiter.hpp"
#include "rodeo/wam.hpp"

namespace rodeo::io {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

Format parse_format(const std::string& name);

/// 17 significant digits, shortest of %g style.
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Spectrum: CSV "energy_ratio,weight" with a "# ground_weight=<p>" line, or JSON
// {"ground_weight": p, "excited": [{"x": .., "w": ..}]}.
void write_spectrum_csv(std::ostream& out, const DiscreteSpectrum& spectrum);
DiscreteSpectrum read_spectrum_csv(std::istream& in);
Json spectrum_to_json(const DiscreteSpectrum& spectrum);
DiscreteSpectrum spectrum_from_json(const Json& j);
/// By extension: .json, anything else is CSV.
DiscreteSpectrum load_spectrum(const std::string& path);

Json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& j);

Json super_schedule_to_json(const SuperSchedule& schedule);
SuperSchedule super_schedule_from_json(const Json& j);

Json physical_state_to_json(const PhysicalState& state);
PhysicalState physical_state_from_json(const Json& j);

struct WamTableRow {
  int n = 0;
  double q = 0;
  double total_time = 0;
  std::vector<double> times;
};

std::vector<WamTableRow> wam_table(const WamState& state);
/// "n,Q,total_time,t1..tn"; rows are padded with empty cells to the widest.
void write_wam_table_csv(std::ostream& out, const std::vector<WamTableRow>& rows);
std::vector<WamTableRow> read_wam_table_csv(std::istream& in);
Json wam_table_to_json(const std::vector<WamTableRow>& rows);

void write_envelope_csv(std::ostream& out, const MonotoneEnvelope& envelope);

struct BoundReport {
  double f = 0;
  double x0 = 1;
  double bound = 0;
  double q = 0;
  std::string schedule_id;
};

Json bound_report_to_json(const BoundReport& report);

/// One line of rra output; absent values are written as empty cells.
struct RraRow {
  double zeta = 0;
  int n = 0;
  std::optional<double> mean, geomean, rms, sigma_over_mean, median, stderr_mean;
};

void write_rra_csv(std::ostream& out, const std::vector<RraRow>& rows);
Json rra_rows_to_json(const std::vector<RraRow>& rows);

/// Generic numeric table: header line then rows.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
Json table_to_json(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);

}  // namespace rodeo::io
