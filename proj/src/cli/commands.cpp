#include "ntic/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "ntic/bayes.hpp"
#include "ntic/closure.hpp"
#include "ntic/conformance.hpp"
#include "ntic/detail/summation.hpp"
#include "ntic/json.hpp"

namespace ntic::cli {

namespace {

using nlohmann::json;

// Runs fn(0..n-1) on a worker pool. Every index is independent; if several
// throw, the exception of the lowest index is rethrown so that failures are
// reported identically regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string format_short(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", value);
  return buffer;
}

json vector_json(std::span<const double> values) {
  return json(std::vector<double>(values.begin(), values.end()));
}

// Expected values over all length-t trajectories, grouped by count.
struct Expectations {
  double info_gain_one_step = 0.0;
  double info_gain_full_past = 0.0;
  double marginal_surprise = 0.0;
};

// E[-ln q(X_t | xi0 + c)] with X_t ~ phi, for a fixed count c.
double expected_next_surprise(const CategoricalParam& phi, const Hyperparameter& posterior) {
  detail::CompensatedSum s;
  for (Symbol x = 0; x < phi.size(); ++x) {
    if (phi[x] > 0.0) s += phi[x] * -std::log(posterior_predictive(posterior, x));
  }
  return s.value();
}

Expectations exact_expectations(const CategoricalParam& phi, const Hyperparameter& xi0,
                                std::uint64_t t) {
  detail::CompensatedSum one_step, full_past, surprise;
  for (const CountVector& c : CountCompositions(phi.size(), t)) {
    double lp_single = 0.0;
    bool possible = true;
    for (Symbol y = 0; y < c.size() && possible; ++y) {
      if (c[y] == 0) continue;
      possible = phi[y] > 0.0;
      if (possible) lp_single += static_cast<double>(c[y]) * std::log(phi[y]);
    }
    if (!possible) continue;
    const double p_count = std::exp(log_inverse_count_cardinality(c) + lp_single);
    full_past += p_count * full_past_info_gain(xi0, c);
    surprise += p_count * expected_next_surprise(phi, add_counts(xi0, c));
    for (Symbol x = 0; x < c.size(); ++x) {
      if (c[x] == 0) continue;
      const double weight = std::exp(log_inverse_count_cardinality(c.decremented(x)) + lp_single);
      one_step += weight * one_step_info_gain(xi0, c, x).value;
    }
  }
  return {one_step.value(), full_past.value(), surprise.value()};
}

std::mt19937_64 row_engine(std::uint64_t seed, std::uint64_t t) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

bool wants(const RunConfig& config, Quantity q) {
  return std::find(config.quantities.begin(), config.quantities.end(), q) !=
         config.quantities.end();
}

std::vector<std::string> curve_columns(const RunConfig& config) {
  std::vector<std::string> columns = {"t", "method"};
  for (Quantity q : config.quantities) {
    switch (q) {
      case Quantity::Ntic:
        columns.insert(columns.end(), {"ntic", "mi_term", "te_term"});
        break;
      case Quantity::OneStepNtic:
        columns.push_back("one_step_ntic");
        break;
      case Quantity::Pointwise:
        columns.insert(columns.end(), {"symbol", "pointwise_ntic", "one_step_pointwise_ntic"});
        break;
      case Quantity::InfoGain:
        columns.insert(columns.end(), {"info_gain_one_step", "info_gain_full_past"});
        break;
      case Quantity::Surprise:
        columns.push_back("marginal_surprise");
        break;
    }
  }
  return columns;
}

std::vector<Cell> curve_row(const RunConfig& config, std::uint64_t t,
                            const std::optional<Trajectory>& sampled) {
  const CategoricalParam& phi = *config.phi;
  const bool needs_expectation = wants(config, Quantity::Ntic) ||
                                 wants(config, Quantity::OneStepNtic) ||
                                 wants(config, Quantity::InfoGain) ||
                                 wants(config, Quantity::Surprise);
  const bool exact = composition_count(phi.size(), t) <= config.exact_cap;
  if (needs_expectation && !exact && config.samples == 0) {
    throw ResourceError("t=" + std::to_string(t) + ": count space exceeds the exact cap of " +
                        std::to_string(config.exact_cap) +
                        "; Monte Carlo mode needs --samples N");
  }
  const auto u = [&](double nats) { return Cell{to_units(nats, config.units)}; };

  NticReport ntic_report;
  double one_step = 0.0;
  Expectations expected;
  if (needs_expectation && exact) {
    const EnumerationLimits limits{config.exact_cap};
    if (wants(config, Quantity::Ntic)) ntic_report = ntic(phi, t, limits);
    if (wants(config, Quantity::OneStepNtic)) one_step = one_step_ntic(phi, t, limits);
    if (wants(config, Quantity::InfoGain) || wants(config, Quantity::Surprise)) {
      expected = exact_expectations(phi, config.xi0, t);
    }
  } else if (needs_expectation) {
    // Plug-in Monte Carlo means of the pointwise quantities.
    std::mt19937_64 engine = row_engine(config.seed, t);
    detail::CompensatedSum mi, os, ig1, igf, surprise;
    for (std::uint64_t s = 0; s < config.samples; ++s) {
      const Trajectory traj = sample_trajectory(phi, t, engine);
      const CountVector c = count(traj);
      mi += -count_log_prob(phi, c);
      os += one_step_pointwise_ntic(traj);
      if (wants(config, Quantity::InfoGain)) {
        ig1 += one_step_info_gain(config.xi0, c, traj.last()).value;
        igf += full_past_info_gain(config.xi0, c);
      }
      if (wants(config, Quantity::Surprise)) {
        surprise += expected_next_surprise(phi, add_counts(config.xi0, c));
      }
    }
    const double n = static_cast<double>(config.samples);
    ntic_report.t = t;
    ntic_report.mi_term = mi.value() / n;
    ntic_report.te_term = symbol_entropy(phi);
    ntic_report.value = ntic_report.mi_term - ntic_report.te_term;
    one_step = os.value() / n;
    expected = {ig1.value() / n, igf.value() / n, surprise.value() / n};
  }

  std::vector<Cell> row = {Cell{t}, Cell{std::string(exact || !needs_expectation ? "exact"
                                                                                  : "monte_carlo")}};
  for (Quantity q : config.quantities) {
    switch (q) {
      case Quantity::Ntic:
        row.insert(row.end(),
                   {u(ntic_report.value), u(ntic_report.mi_term), u(ntic_report.te_term)});
        break;
      case Quantity::OneStepNtic:
        row.push_back(u(one_step));
        break;
      case Quantity::Pointwise: {
        const Trajectory prefix = sampled->prefix(t);
        row.push_back(Cell{static_cast<std::uint64_t>(prefix.last())});
        row.push_back(u(pointwise_ntic(phi, prefix)));
        row.push_back(u(one_step_pointwise_ntic(prefix)));
        break;
      }
      case Quantity::InfoGain:
        row.insert(row.end(), {u(expected.info_gain_one_step), u(expected.info_gain_full_past)});
        break;
      case Quantity::Surprise:
        row.push_back(u(expected.marginal_surprise));
        break;
    }
  }
  return row;
}

void write_table(const RunConfig& config, const Table& table, std::ostream& out) {
  const auto emit = [&](std::ostream& stream) {
    if (config.format == Format::Json) {
      write_json(table, stream);
    } else {
      write_csv(table, stream);
    }
  };
  if (config.output_path == "-") {
    emit(out);
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("out", "cannot open '" + config.output_path + "' for writing");
  emit(file);
  if (!file) throw ConfigError("out", "failed writing '" + config.output_path + "'");
}

// Maps library exceptions to exit codes with a one-line diagnostic.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (const WitnessFailed& e) {
    err << "witness failed: " << e.what() << '\n';
    return kWitnessFailure;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const AlphabetMismatch& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

// ------------------------------------------------------------------ output

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) out << format_real(v);
            else if constexpr (std::is_same_v<V, std::uint64_t>) out << v;
            else if constexpr (std::is_same_v<V, std::string>) out << v;
          },
          row[i]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json object = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      object[table.columns[i]] = std::visit(
          [](const auto& v) -> json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::monostate>) return nullptr;
            else return v;
          },
          row[i]);
    }
    rows.push_back(std::move(object));
  }
  const json document = {{"command", table.command},
                         {"metadata", table.metadata},
                         {"columns", table.columns},
                         {"rows", std::move(rows)}};
  out << document.dump(2) << '\n';
}

// ------------------------------------------------------------------ tables

Table curve_table(const RunConfig& config) {
  if (!config.phi) throw ConfigError("phi", "required for curve");
  const CategoricalParam& phi = *config.phi;

  Table table;
  table.command = "curve";
  table.columns = curve_columns(config);
  std::vector<std::string> quantity_names;
  for (Quantity q : config.quantities) quantity_names.push_back(quantity_name(q));
  table.metadata = {{"phi", vector_json(phi.probs())},
                    {"xi0", vector_json(config.xi0.alpha())},
                    {"tmax", config.t_max},
                    {"quantities", quantity_names},
                    {"seed", config.seed},
                    {"samples", config.samples},
                    {"exact_cap", config.exact_cap},
                    {"units", units_name(config.units)}};

  std::optional<Trajectory> sampled;
  if (wants(config, Quantity::Pointwise)) {
    sampled = sample_trajectory(phi, config.t_max, config.seed);
    table.metadata["sampled_trajectory"] = to_json(*sampled);
  }

  table.rows.resize(config.t_max);
  parallel_for(config.t_max, [&](std::size_t i) {
    table.rows[i] = curve_row(config, static_cast<std::uint64_t>(i + 1), sampled);
  });

  json first_monte_carlo = nullptr;
  for (const auto& row : table.rows) {
    if (std::get<std::string>(row[1]) == "monte_carlo") {
      first_monte_carlo = std::get<std::uint64_t>(row[0]);
      break;
    }
  }
  table.metadata["monte_carlo_from_t"] = first_monte_carlo;
  return table;
}

Table trajectory_table(const RunConfig& config) {
  if (!config.traj) throw ConfigError("traj", "required for trajectory");
  const Trajectory& traj = *config.traj;
  const Hyperparameter& xi0 = config.xi0;
  if (config.phi) config.phi->alphabet().check_same(traj.alphabet(), "trajectory");

  Table table;
  table.command = "trajectory";
  table.columns = {"t",
                   "symbol",
                   "pointwise_ntic",
                   "one_step_pointwise_ntic",
                   "hindsight_empirical_surprise",
                   "hindsight_marginal_surprise",
                   "marginal_surprise_last",
                   "marginal_surprise_next",
                   "info_gain_one_step",
                   "info_gain_full_past"};
  table.metadata = {{"xi0", vector_json(xi0.alpha())},
                    {"traj", to_json(traj)},
                    {"units", units_name(config.units)}};
  table.metadata["phi"] = config.phi ? vector_json(config.phi->probs()) : json(nullptr);

  const auto u = [&](double nats) { return Cell{to_units(nats, config.units)}; };
  for (std::size_t t = 1; t <= traj.size(); ++t) {
    const Trajectory prefix = traj.prefix(t);
    const Trajectory before = traj.prefix(t - 1);
    const Symbol last = prefix.last();

    Cell pointwise;
    if (config.phi && trajectory_log_prob(*config.phi, prefix) != kNegInf) {
      pointwise = u(pointwise_ntic(*config.phi, prefix));
    }
    Cell next;
    if (t < traj.size()) next = u(marginal_surprise(xi0, prefix, traj[t]));

    table.rows.push_back({Cell{static_cast<std::uint64_t>(t)},
                          Cell{static_cast<std::uint64_t>(last)},
                          pointwise,
                          u(one_step_pointwise_ntic(prefix)),
                          u(hindsight_empirical_surprise(prefix)),
                          u(marginal_surprise(xi0, prefix, last)),
                          u(marginal_surprise(xi0, before, last)),
                          next,
                          u(one_step_info_gain(xi0, prefix).value),
                          u(full_past_info_gain(xi0, prefix))});
  }
  return table;
}

// ---------------------------------------------------------------- commands

int cmd_curve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    write_table(config, curve_table(config), out);
    return kSuccess;
  });
}

int cmd_trajectory(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    write_table(config, trajectory_table(config), out);
    return kSuccess;
  });
}

int cmd_witness(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Trajectory traj = config.traj ? *config.traj : Trajectory(Alphabet(config.alphabet_size()), {0});
    const auto u = [&](double nats) { return to_units(nats, config.units); };
    const char* unit = units_name(config.units);
    if (config.xi0 == config.xi0_b) {
      throw WitnessFailed("the two initial hyperparameters are identical; pass a different --xi0-b");
    }
    const WitnessReport report = ntic_ig_divergence_witness(traj, config.xi0, config.xi0_b);

    out << std::setprecision(10);
    out << "trajectory:               " << to_json(traj).dump() << '\n';
    out << "one-step pointwise NTIC:  " << u(report.one_step_pointwise_ntic) << ' ' << unit
        << " (same for every prior)\n";
    const auto print_gain = [&](const char* label, const Hyperparameter& xi0,
                                const InfoGainReport& gain) {
      out << label << " xi0=" << describe(xi0.alpha()) << ": IG1 = " << u(gain.value) << ' '
          << unit << "  (surprise " << u(gain.surprise_term) << ", expected hindsight "
          << u(gain.expected_hindsight_term) << ")\n";
    };
    print_gain("prior A", config.xi0, report.gain_a);
    print_gain("prior B", config.xi0_b, report.gain_b);
    out << "|IG1_A - IG1_B|:          " << u(report.gain_gap()) << ' ' << unit << '\n';
    out << "witness: PASS (identical one-step pointwise NTIC, different information gain)\n";
    return kSuccess;
  });
}

int cmd_conformance(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ConformanceOptions options;
    options.max_alphabet = config.max_alphabet;
    options.max_t = config.max_t;
    options.tolerance = config.tolerance;
    const ConformanceSummary summary = run_conformance(options);

    for (const std::string& w : summary.warnings) err << "warning: reduced grid: " << w << '\n';
    std::size_t shown = 0;
    for (const ConformanceRecord& r : summary.records) {
      if (r.pass || shown++ >= 20) continue;
      out << "FAIL " << r.quantity << " [" << r.context << "] closed_form=" << format_real(r.closed_form)
          << " oracle=" << format_real(r.oracle) << " abs_diff=" << format_real(r.abs_diff)
          << (r.tolerance_induced ? " (tolerance-induced: below double-precision agreement)" : "")
          << '\n';
    }
    out << "conformance: " << summary.records.size() << " checks, " << summary.passed()
        << " passed, " << summary.failed() << " failed";
    if (summary.tolerance_induced() > 0) {
      out << " (" << summary.tolerance_induced() << " tolerance-induced)";
    }
    out << "; max_K=" << options.max_alphabet << " max_t=" << options.max_t
        << " tol=" << format_short(options.tolerance) << '\n';

    if (config.output_path != "-") {
      json records = json::array();
      for (const ConformanceRecord& r : summary.records) records.push_back(to_json(r));
      const json document = {
          {"command", "conformance"},
          {"options",
           {{"max_k", options.max_alphabet}, {"max_t", options.max_t}, {"tol", options.tolerance}}},
          {"summary",
           {{"checks", summary.records.size()},
            {"passed", summary.passed()},
            {"failed", summary.failed()},
            {"tolerance_induced", summary.tolerance_induced()},
            {"warnings", summary.warnings}}},
          {"records", std::move(records)}};
      std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("out", "cannot open '" + config.output_path + "' for writing");
      file << document.dump(2) << '\n';
    }
    return summary.ok() ? kSuccess : kConformanceFailure;
  });
}

int run_command(const std::string& command, const json& config_json, std::ostream& out,
                std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(config_json);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  if (command == "curve") return cmd_curve(config, out, err);
  if (command == "trajectory") return cmd_trajectory(config, out, err);
  if (command == "witness") return cmd_witness(config, out, err);
  if (command == "conformance") return cmd_conformance(config, out, err);
  err << "usage error: unknown command '" << command << "'\n";
  return kUsageError;
}

}  // namespace ntic::cli
