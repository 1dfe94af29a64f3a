#include "logbm/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace logbm {

nlohmann::json value_to_json(const Value& v) {
  if (const double* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d == 0 ? 0.0 : *d;
  }
  return to_string(v);
}

nlohmann::json report_to_json(const CheckReport& r) {
  nlohmann::json j;
  j["checkName"] = r.checkName;
  j["kind"] = to_string(r.kind);
  j["mode"] = to_string(r.mode);
  j["lhs"] = value_to_json(r.lhs);
  j["rhs"] = value_to_json(r.rhs);
  j["holds"] = r.holds;
  j["equality"] = r.equality;
  j["relativeMargin"] = r.relativeMargin ? value_to_json(*r.relativeMargin) : nlohmann::json(nullptr);
  if (r.structuralEquality) j["structuralEquality"] = *r.structuralEquality;
  if (r.mode == Mode::Float) j["tolerance"] = r.tolerance;
  j["status"] = to_string(r.status);
  j["details"] = r.details;
  if (!r.subchecks.empty()) {
    j["subchecks"] = nlohmann::json::array();
    for (const CheckReport& sub : r.subchecks) j["subchecks"].push_back(report_to_json(sub));
  }
  if (!r.instance.is_null()) j["instance"] = r.instance;
  return j;
}

nlohmann::json report_document(const std::string& command, nlohmann::json invocation, nlohmann::json payload,
                               std::optional<double> wall_time_seconds) {
  nlohmann::json doc;
  doc["schemaVersion"] = kReportSchemaVersion;
  doc["header"] = nlohmann::json::object();
  if (wall_time_seconds) doc["header"]["wallTimeSeconds"] = *wall_time_seconds;
  doc["command"] = command;
  doc["invocation"] = std::move(invocation);
  for (auto& [key, value] : payload.items()) doc[key] = value;
  return doc;
}

std::string report_table(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(34) << "check" << std::setw(7) << "mode" << std::setw(26) << "lhs" << std::setw(26)
     << "rhs" << std::setw(7) << "holds" << std::setw(7) << "equal" << "status\n";
  for (const CheckReport& top : reports) {
    for (const CheckReport* r : top.flatten()) {
      const std::string indent = r == &top ? "" : "  ";
      os << std::left << std::setw(34) << indent + r->checkName << std::setw(7) << to_string(r->mode)
         << std::setw(26) << to_string(r->lhs) << std::setw(26) << to_string(r->rhs) << std::setw(7)
         << (r->holds ? "yes" : "no") << std::setw(7) << (r->equality ? "yes" : "no") << to_string(r->status)
         << "\n";
    }
  }
  return os.str();
}

}  // namespace logbm
