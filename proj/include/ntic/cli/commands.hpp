#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ntic/cli/config.hpp"

namespace ntic::cli {

// A rectangular result: `t` first, then one column per reported quantity.
// Missing cells are std::monostate (empty in CSV, null in JSON).
using Cell = std::variant<std::monostate, double, std::uint64_t, std::string>;

struct Table {
  std::string command;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Header row plus one line per row; reals with 17 significant digits.
void write_csv(const Table& table, std::ostream& out);
// {"command", "metadata", "columns", "rows": [{column: value}]}.
void write_json(const Table& table, std::ostream& out);

// One row per t in [1, t_max]; exact where the count space fits
// config.exact_cap, Monte Carlo (config.samples draws) beyond it.
Table curve_table(const RunConfig& config);
// One row per prefix of config.traj.
Table trajectory_table(const RunConfig& config);

// Command entry points. Each returns a process exit code and never throws;
// errors are reported on `err`.
int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_trajectory(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_witness(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_conformance(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses the JSON config (file values already merged with flags) and runs
// `command`. Unknown commands and invalid configs give kUsageError.
int run_command(const std::string& command, const nlohmann::json& config, std::ostream& out,
                std::ostream& err);

}  // namespace ntic::cli
