// Command-line front end: curve, trajectory, witness, conformance.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "ntic/cli/commands.hpp"

namespace {

using nlohmann::json;

struct Flags {
  std::optional<std::string> config_path;
  json overrides = json::object();
};

// Registers a string-valued flag whose value, if given, lands in `overrides[key]`.
void text_flag(CLI::App& app, Flags& flags, const std::string& name, const std::string& key,
               const std::string& help) {
  app.add_option_function<std::string>(
      name, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, help);
}

void common_flags(CLI::App& app, Flags& flags) {
  app.add_option_function<std::string>(
      "--config", [&flags](const std::string& v) { flags.config_path = v; },
      "JSON config file; command-line flags override its values");
  text_flag(app, flags, "--xi0", "xi0", "initial hyperparameter, comma-separated (default all ones)");
  text_flag(app, flags, "--units", "units", "nats or bits (default nats)");
  text_flag(app, flags, "--out", "out", "output path, '-' for standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closure measures and Bayesian information gain for IID categorical processes"};
  app.require_subcommand(1);
  Flags flags;

  auto* curve = app.add_subcommand("curve", "expected quantities for t = 1..tmax");
  common_flags(*curve, flags);
  text_flag(*curve, flags, "--phi", "phi", "categorical parameter, comma-separated");
  text_flag(*curve, flags, "--tmax", "tmax", "largest horizon (default 10)");
  text_flag(*curve, flags, "--quantities", "quantities",
            "comma list of ntic, one_step_ntic, pointwise, info_gain, surprise");
  text_flag(*curve, flags, "--seed", "seed", "RNG seed (default 0)");
  text_flag(*curve, flags, "--samples", "samples", "Monte Carlo draws per t beyond the exact cap");
  text_flag(*curve, flags, "--exact-cap", "exact_cap", "largest count space enumerated exactly");
  text_flag(*curve, flags, "--format", "format", "csv or json (default csv)");

  auto* trajectory = app.add_subcommand("trajectory", "per-prefix quantities along one trajectory");
  common_flags(*trajectory, flags);
  text_flag(*trajectory, flags, "--traj", "traj", "symbol indices, comma-separated");
  text_flag(*trajectory, flags, "--phi", "phi", "categorical parameter (enables pointwise NTIC)");
  text_flag(*trajectory, flags, "--format", "format", "csv or json (default csv)");

  auto* witness = app.add_subcommand("witness", "same one-step NTIC, different information gain");
  common_flags(*witness, flags);
  text_flag(*witness, flags, "--traj", "traj", "symbol indices (default 0)");
  text_flag(*witness, flags, "--xi0-b", "xi0_b", "second initial hyperparameter (default all tens)");

  auto* conformance = app.add_subcommand("conformance", "closed forms against the brute-force oracle");
  common_flags(*conformance, flags);
  text_flag(*conformance, flags, "--max-k", "max_k", "largest alphabet size (default 3)");
  text_flag(*conformance, flags, "--max-t", "max_t", "largest horizon (default 8)");
  text_flag(*conformance, flags, "--tol", "tol", "absolute tolerance (default 1e-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ntic::cli::kUsageError;
  }

  json config = json::object();
  if (flags.config_path) {
    try {
      config = ntic::cli::load_config_file(*flags.config_path);
    } catch (const ntic::cli::ConfigError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return ntic::cli::kUsageError;
    }
  }
  config = ntic::cli::merge_config(std::move(config), flags.overrides);

  const std::string command = app.get_subcommands().front()->get_name();
  return ntic::cli::run_command(command, config, std::cout, std::cerr);
}
