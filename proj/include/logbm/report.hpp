#pragma once

#include "json.hpp"
#include "logbm/checkers.hpp"

namespace logbm {

inline constexpr int kReportSchemaVersion = 1;

/// Rationals and radicals as strings ("p/q", "q*sqrt(g)"), floats as numbers.
nlohmann::json value_to_json(const Value& v);
nlohmann::json report_to_json(const CheckReport& r);

/// Wraps payload fields in a versioned document. The header holds only
/// run-dependent data (timing) so that the remainder is reproducible.
nlohmann::json report_document(const std::string& command, nlohmann::json invocation, nlohmann::json payload,
                               std::optional<double> wall_time_seconds = std::nullopt);

/// Fixed-width table of the flattened reports.
std::string report_table(const std::vector<CheckReport>& reports);

}  // namespace logbm
