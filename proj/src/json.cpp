#include "ntic/json.hpp"

#include <numbers>

namespace ntic {

double to_units(double nats, Units units) {
  return units == Units::Bits ? nats / std::numbers::ln2 : nats;
}

const char* units_name(Units units) { return units == Units::Bits ? "bits" : "nats"; }

nlohmann::json to_json(const Trajectory& traj) {
  return nlohmann::json(std::vector<Symbol>(traj.symbols().begin(), traj.symbols().end()));
}

nlohmann::json to_json(const CountVector& c) {
  return nlohmann::json(std::vector<std::uint64_t>(c.counts().begin(), c.counts().end()));
}

nlohmann::json to_json(const NticReport& report, Units units) {
  return {{"t", report.t},
          {"value", to_units(report.value, units)},
          {"mi_term", to_units(report.mi_term, units)},
          {"te_term", to_units(report.te_term, units)},
          {"units", units_name(units)}};
}

nlohmann::json to_json(const InfoGainReport& report, Units units) {
  return {{"value", to_units(report.value, units)},
          {"surprise_term", to_units(report.surprise_term, units)},
          {"expected_hindsight_term", to_units(report.expected_hindsight_term, units)},
          {"units", units_name(units)}};
}

nlohmann::json to_json(const ConformanceRecord& record) {
  return {{"quantity", record.quantity},   {"context", record.context},
          {"closed_form", record.closed_form}, {"oracle", record.oracle},
          {"abs_diff", record.abs_diff},   {"tolerance", record.tolerance},
          {"pass", record.pass},           {"tolerance_induced", record.tolerance_induced}};
}

}  // namespace ntic
