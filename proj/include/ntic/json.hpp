#pragma once

// JSON encodings of the library's report types.

#include <json.hpp>

#include "ntic/bayes.hpp"
#include "ntic/closure.hpp"
#include "ntic/conformance.hpp"
#include "ntic/process.hpp"

namespace ntic {

enum class Units { Nats, Bits };

// Converts a value in nats to the requested unit (bits divide by ln 2).
double to_units(double nats, Units units);
const char* units_name(Units units);

nlohmann::json to_json(const Trajectory& traj);
nlohmann::json to_json(const CountVector& c);
nlohmann::json to_json(const NticReport& report, Units units);
nlohmann::json to_json(const InfoGainReport& report, Units units);
nlohmann::json to_json(const ConformanceRecord& record);

}  // namespace ntic
