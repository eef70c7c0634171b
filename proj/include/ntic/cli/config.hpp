#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ntic/errors.hpp"
#include "ntic/json.hpp"
#include "ntic/process.hpp"

namespace ntic::cli {

enum class Quantity { Ntic, OneStepNtic, Pointwise, InfoGain, Surprise };
enum class Format { Csv, Json };

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kWitnessFailure = 2,
  kConformanceFailure = 3,
  kResourceCap = 4,
};

// Invalid configuration; names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  std::optional<CategoricalParam> phi;
  Hyperparameter xi0 = Hyperparameter::constant(2, 1.0);
  Hyperparameter xi0_b = Hyperparameter::constant(2, 10.0);
  std::optional<Trajectory> traj;
  std::uint64_t t_max = 10;
  std::vector<Quantity> quantities = {Quantity::Ntic, Quantity::OneStepNtic};
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  Units units = Units::Nats;
  Format format = Format::Csv;
  std::string output_path = "-";  // "-" is standard output
  // Exact enumeration is used while the count space has at most this many
  // elements; larger t switches to Monte Carlo.
  std::uint64_t exact_cap = 1'000'000;
  // conformance
  std::size_t max_alphabet = 3;
  std::uint64_t max_t = 8;
  double tolerance = 1e-10;

  std::size_t alphabet_size() const { return xi0.size(); }
};

// Builds a validated RunConfig from a JSON object. Keys: phi, xi0, xi0_b,
// traj, tmax, quantities, seed, samples, units, format, out, exact_cap,
// max_k, max_t, tol. Vector-valued keys accept a JSON array or a
// comma-separated string. Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& object);

// Reads a JSON config file; throws ConfigError("config", ...) on failure.
nlohmann::json load_config_file(const std::string& path);

// `base` updated with every key of `overrides` (flags win over the file).
nlohmann::json merge_config(nlohmann::json base, const nlohmann::json& overrides);

std::vector<double> parse_real_list(const std::string& text, const std::string& field);
std::vector<Symbol> parse_symbol_list(const std::string& text, const std::string& field);

const char* quantity_name(Quantity q);

}  // namespace ntic::cli
