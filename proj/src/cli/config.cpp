#include "ntic/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ntic::cli {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "phi",     "xi0",   "xi0_b",     "traj",  "tmax",  "quantities", "seed", "samples",
      "units",   "format", "out",      "exact_cap", "max_k", "max_t",   "tol",
  };
  return keys;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    parts.push_back(first == std::string::npos ? "" : item.substr(first, last - first + 1));
  }
  return parts;
}

std::vector<double> real_list(const json& value, const std::string& field) {
  if (value.is_string()) return parse_real_list(value.get<std::string>(), field);
  if (!value.is_array()) throw ConfigError(field, "expected a list of numbers");
  std::vector<double> out;
  for (const json& v : value) {
    if (!v.is_number()) throw ConfigError(field, "expected a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Symbol> symbol_list(const json& value, const std::string& field) {
  if (value.is_string()) return parse_symbol_list(value.get<std::string>(), field);
  if (!value.is_array()) throw ConfigError(field, "expected a list of symbol indices");
  std::vector<Symbol> out;
  for (const json& v : value) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw ConfigError(field, "expected non-negative integers");
    }
    out.push_back(v.get<Symbol>());
  }
  return out;
}

std::uint64_t unsigned_value(const json& value, const std::string& field) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  // nlohmann stores plain integer literals as signed
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) return value.get<std::uint64_t>();
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    char* end = nullptr;
    errno = 0;
    const unsigned long long parsed = std::strtoull(text.c_str(), &end, 10);
    if (!text.empty() && text.front() != '-' && errno == 0 && *end == '\0') return parsed;
  }
  throw ConfigError(field, "expected a non-negative integer");
}

double real_value(const json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::vector<double> parsed = parse_real_list(value.get<std::string>(), field);
    if (parsed.size() == 1) return parsed.front();
  }
  throw ConfigError(field, "expected a number");
}

std::string string_value(const json& value, const std::string& field) {
  if (!value.is_string()) throw ConfigError(field, "expected a string");
  return value.get<std::string>();
}

Quantity parse_quantity(const std::string& name) {
  if (name == "ntic") return Quantity::Ntic;
  if (name == "one_step_ntic") return Quantity::OneStepNtic;
  if (name == "pointwise") return Quantity::Pointwise;
  if (name == "info_gain") return Quantity::InfoGain;
  if (name == "surprise") return Quantity::Surprise;
  throw ConfigError("quantities", "unknown quantity '" + name +
                                      "' (expected ntic, one_step_ntic, pointwise, info_gain, "
                                      "surprise)");
}

template <typename T, typename Build>
T build_or_config_error(const std::string& field, Build build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const std::string& part : split(text)) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || errno != 0 || *end != '\0') {
      throw ConfigError(field, "cannot parse '" + part + "' as a number");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Symbol> parse_symbol_list(const std::string& text, const std::string& field) {
  std::vector<Symbol> out;
  if (text.empty()) return out;
  for (const std::string& part : split(text)) {
    out.push_back(static_cast<Symbol>(unsigned_value(json(part), field)));
  }
  return out;
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Ntic: return "ntic";
    case Quantity::OneStepNtic: return "one_step_ntic";
    case Quantity::Pointwise: return "pointwise";
    case Quantity::InfoGain: return "info_gain";
    case Quantity::Surprise: return "surprise";
  }
  return "?";
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  try {
    json object = json::parse(in);
    if (!object.is_object()) throw ConfigError("config", "top level must be a JSON object");
    return object;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
}

json merge_config(json base, const json& overrides) {
  if (base.is_null()) base = json::object();
  for (const auto& [key, value] : overrides.items()) base[key] = value;
  return base;
}

RunConfig parse_config(const json& object) {
  if (!object.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!known_keys().contains(key)) throw ConfigError(key, "unknown configuration key");
  }

  RunConfig config;
  if (object.contains("phi")) {
    const auto probs = real_list(object["phi"], "phi");
    config.phi = build_or_config_error<CategoricalParam>("phi", [&] { return CategoricalParam(probs); });
  }

  std::size_t k = config.phi ? config.phi->size() : 2;
  if (object.contains("xi0")) {
    const auto alpha = real_list(object["xi0"], "xi0");
    config.xi0 = build_or_config_error<Hyperparameter>("xi0", [&] { return Hyperparameter(alpha); });
    if (config.phi && config.xi0.size() != k) {
      throw ConfigError("xi0", "has " + std::to_string(config.xi0.size()) +
                                   " components but phi has " + std::to_string(k));
    }
    k = config.xi0.size();
  } else {
    config.xi0 = Hyperparameter::constant(k, 1.0);
  }

  if (object.contains("xi0_b")) {
    const auto alpha = real_list(object["xi0_b"], "xi0_b");
    config.xi0_b = build_or_config_error<Hyperparameter>("xi0_b", [&] { return Hyperparameter(alpha); });
    if (config.xi0_b.size() != k) {
      throw ConfigError("xi0_b", "has " + std::to_string(config.xi0_b.size()) +
                                     " components but the alphabet has " + std::to_string(k));
    }
  } else {
    config.xi0_b = Hyperparameter::constant(k, 10.0);
  }

  if (object.contains("traj")) {
    const auto symbols = symbol_list(object["traj"], "traj");
    config.traj = build_or_config_error<Trajectory>("traj", [&] { return Trajectory(Alphabet(k), symbols); });
  }

  if (object.contains("tmax")) {
    config.t_max = unsigned_value(object["tmax"], "tmax");
    if (config.t_max < 1) throw ConfigError("tmax", "must be at least 1");
  }
  if (object.contains("quantities")) {
    const json& value = object["quantities"];
    std::vector<std::string> names;
    if (value.is_string()) {
      names = split(value.get<std::string>());
    } else if (value.is_array()) {
      for (const json& v : value) names.push_back(string_value(v, "quantities"));
    } else {
      throw ConfigError("quantities", "expected a list of names");
    }
    config.quantities.clear();
    for (const std::string& name : names) {
      const Quantity q = parse_quantity(name);
      if (std::find(config.quantities.begin(), config.quantities.end(), q) == config.quantities.end()) {
        config.quantities.push_back(q);
      }
    }
    if (config.quantities.empty()) throw ConfigError("quantities", "at least one is required");
  }
  if (object.contains("seed")) config.seed = unsigned_value(object["seed"], "seed");
  if (object.contains("samples")) config.samples = unsigned_value(object["samples"], "samples");
  if (object.contains("units")) {
    const std::string units = string_value(object["units"], "units");
    if (units == "nats") config.units = Units::Nats;
    else if (units == "bits") config.units = Units::Bits;
    else throw ConfigError("units", "expected 'nats' or 'bits'");
  }
  if (object.contains("format")) {
    const std::string format = string_value(object["format"], "format");
    if (format == "csv") config.format = Format::Csv;
    else if (format == "json") config.format = Format::Json;
    else throw ConfigError("format", "expected 'csv' or 'json'");
  }
  if (object.contains("out")) {
    config.output_path = string_value(object["out"], "out");
    if (config.output_path.empty()) throw ConfigError("out", "must not be empty");
  }
  if (object.contains("exact_cap")) {
    config.exact_cap = unsigned_value(object["exact_cap"], "exact_cap");
    if (config.exact_cap < 1) throw ConfigError("exact_cap", "must be at least 1");
  }
  if (object.contains("max_k")) {
    config.max_alphabet = unsigned_value(object["max_k"], "max_k");
    if (config.max_alphabet < 1) throw ConfigError("max_k", "must be at least 1");
  }
  if (object.contains("max_t")) {
    config.max_t = unsigned_value(object["max_t"], "max_t");
    if (config.max_t < 1) throw ConfigError("max_t", "must be at least 1");
  }
  if (object.contains("tol")) {
    config.tolerance = real_value(object["tol"], "tol");
    if (!(config.tolerance >= 0.0)) throw ConfigError("tol", "must be non-negative");
  }
  return config;
}

}  // namespace ntic::cli
