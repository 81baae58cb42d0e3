#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "smlab/analysis.hpp"
#include "smlab/bounds.hpp"
#include "smlab/engine.hpp"

namespace smlab {

/// "%.12g" rendering used by every text output.
std::string format_number(double value);

/// The value that format_number prints, parsed back. JSON documents store
/// these so that they carry 12 significant digits.
double round_significant(double value);

inline constexpr const char* kTrajectoryCsvHeader = "t,price,quantity,revenue,jumped,segments";
inline constexpr const char* kSweepCsvHeader = "delta,p_map_hat,recurrence_gap,collapsed,monopolist_visits";

void write_trajectory_csv(std::ostream& out, std::span<const StepRecord> trajectory);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

nlohmann::json to_json(const KeyQuantities& kq);
nlohmann::json to_json(std::span<const StepRecord> trajectory);
nlohmann::json to_json(std::span<const SweepRow> rows);
nlohmann::json to_json(const AdmissionEstimate& estimate);

/// Flat object; bounds that do not apply are null and named in "reasons".
nlohmann::json to_json(const BoundReport& report);

/// Arrays are always present, empty when nothing was found.
nlohmann::json to_json(const ValidationReport& report);

}  // namespace smlab
