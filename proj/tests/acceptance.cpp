// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ntic/bayes.hpp"
#include "ntic/closure.hpp"
#include "ntic/conformance.hpp"
#include "ntic/oracle.hpp"
#include "ntic/special_functions.hpp"

#ifndef NTIC_TOOL_PATH
#error "NTIC_TOOL_PATH must name the command-line tool"
#endif

using namespace ntic;
using std::numbers::ln2;

namespace {

constexpr double kOracleTol = 1e-10;        // criteria 1, 5
constexpr double kSpreadTol = 1e-12;        // criterion 2
constexpr double kSpotTol = 1e-12;          // criteria 3, 4
constexpr double kIgFormTol = 1e-10;        // criterion 6, digamma vs expectation form
constexpr double kIgQuadTol = 1e-7;         // criterion 6, quadrature
constexpr double kIgSpotTol = 1e-10;        // criterion 6, ln 2 - 1/2
constexpr double kWitnessGap = 0.05;        // criterion 7
constexpr double kRecurrenceTol = 1e-12;    // criterion 8
constexpr double kHarmonicTol = 1e-10;      // criterion 8
constexpr double kRuntimeLimitSeconds = 60; // criterion 1

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- 1 and 2

struct GridPoint {
  double oracle_full = 0.0;
  double oracle_one = 0.0;
  double mi = 0.0;
  double te = 0.0;
  std::vector<double> pointwise_full;
  std::vector<double> pointwise_one;
};

// (K, phi index, t) -> one GridPoint per xi0 grid entry.
using GridResults = std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::vector<GridPoint>>;

Outcome criterion_closed_form_vs_oracle(GridResults& results) {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::size_t points = 0;
  for (std::size_t k : {2, 3}) {
    const auto phis = phi_grid(k);
    const auto xis = xi0_grid(k);
    for (std::size_t pi = 0; pi < phis.size(); ++pi) {
      for (std::uint64_t t = 1; t <= 8; ++t) {
        const double closed_full = ntic::ntic(phis[pi], t).value;
        const double closed_one = one_step_ntic(phis[pi], t);
        for (const Hyperparameter& xi0 : xis) {
          const JointTable joint = build_joint(phis[pi], xi0, t);
          GridPoint g;
          g.mi = oracle_mutual_information(joint, InfoMode::FullPast);
          g.te = oracle_transfer_entropy(joint).last_observation;
          g.oracle_full = g.mi - g.te;
          g.oracle_one = oracle_ntic(joint, InfoMode::OneStep);
          g.pointwise_full = oracle_pointwise_ntic(joint, InfoMode::FullPast);
          g.pointwise_one = oracle_pointwise_ntic(joint, InfoMode::OneStep);
          worst = std::max({worst, std::abs(g.oracle_full - closed_full), std::abs(g.oracle_one - closed_one)});
          results[{k, pi, t}].push_back(std::move(g));
          ++points;
        }
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = worst <= kOracleTol && seconds <= kRuntimeLimitSeconds;
  o.detail = std::to_string(points) + " grid points, both modes, max |closed - oracle| = " + fmt(worst) +
             " (tol " + fmt(kOracleTol) + "), " + fmt(seconds) + " s (limit " + fmt(kRuntimeLimitSeconds) + " s)";
  return o;
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

Outcome criterion_xi0_independence(const GridResults& results) {
  double worst = 0.0;
  for (const auto& [key, per_xi] : results) {
    using Field = double GridPoint::*;
    for (Field f : {&GridPoint::oracle_full, &GridPoint::oracle_one, &GridPoint::mi, &GridPoint::te}) {
      std::vector<double> v;
      for (const GridPoint& g : per_xi) v.push_back(g.*f);
      worst = std::max(worst, spread(v));
    }
    for (std::size_t e = 0; e < per_xi.front().pointwise_full.size(); ++e) {
      std::vector<double> full, one;
      for (const GridPoint& g : per_xi) {
        full.push_back(g.pointwise_full.at(e));
        one.push_back(g.pointwise_one.at(e));
      }
      worst = std::max({worst, spread(full), spread(one)});
    }
  }
  Outcome o;
  o.pass = worst <= kSpreadTol;
  o.detail = std::to_string(results.size()) + " (K, phi, t) groups over 4 initial hyperparameters, expected and " +
             "pointwise values, max spread = " + fmt(worst) + " (tol " + fmt(kSpreadTol) + ")";
  return o;
}

// ---------------------------------------------------------------- 3 and 4

Outcome criterion_monotone_divergence() {
  Outcome o;
  std::ostringstream d;
  const Hyperparameter flat({1, 1});
  for (const auto& phi : {CategoricalParam({0.5, 0.5}), CategoricalParam({0.2, 0.8})}) {
    double prev_closed = -INFINITY, prev_oracle = -INFINITY;
    double min_step = INFINITY;
    for (std::uint64_t t = 1; t <= 8; ++t) {
      const double closed = ntic::ntic(phi, t).value;
      const double oracle = oracle_ntic(phi, flat, t, InfoMode::FullPast);
      if (t == 1 && (std::abs(closed) > kSpotTol || std::abs(oracle) > kSpotTol)) o.pass = false;
      if (!(closed > prev_closed) || !(oracle > prev_oracle)) o.pass = false;
      if (t > 1) min_step = std::min(min_step, closed - prev_closed);
      prev_closed = closed;
      prev_oracle = oracle;
    }
    d << "phi=(" << phi[0] << "," << phi[1] << ") min increment " << fmt(min_step) << "; ";
  }
  double worst_zero = 0.0;
  for (std::uint64_t t = 1; t <= 8; ++t) {
    worst_zero = std::max({worst_zero, std::abs(ntic::ntic(CategoricalParam({1, 0}), t).value),
                           std::abs(oracle_ntic(CategoricalParam({1, 0}), flat, t, InfoMode::FullPast))});
  }
  if (worst_zero != 0.0) o.pass = false;
  d << "phi=(1,0) max |NTIC| = " << fmt(worst_zero);
  o.detail = d.str();
  return o;
}

Outcome criterion_binomial_spot() {
  const CategoricalParam fair({0.5, 0.5});
  const double closed = ntic::ntic(fair, 2).value;
  const double oracle = oracle_ntic(fair, Hyperparameter({1, 1}), 2, InfoMode::FullPast);
  const double err = std::max(std::abs(closed - 0.5 * ln2), std::abs(oracle - 0.5 * ln2));
  return {err <= kSpotTol, "NTIC_2 = " + std::to_string(closed) + ", |err| vs 0.5 ln 2 = " + fmt(err) +
                               " (closed form and oracle, tol " + fmt(kSpotTol) + ")"};
}

// ---------------------------------------------------------------- 5

// Entry index of a trajectory inside a joint built over the support of phi.
std::size_t entry_of(const JointTable& joint, const Trajectory& path) {
  std::vector<std::size_t> rank(joint.phi().size(), 0);
  std::size_t base = 0;
  for (Symbol x = 0; x < joint.phi().size(); ++x) {
    if (joint.phi()[x] > 0.0) rank[x] = base++;
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < path.size(); ++i) index = index * base + rank[path[i]];
  return index;
}

Outcome criterion_one_step_pointwise() {
  struct Cached {
    std::unique_ptr<JointTable> joint;
    std::vector<double> one_step;
  };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::uint64_t>, Cached> cache;
  auto lookup = [&](std::size_t k, std::size_t pi, std::size_t xi, std::uint64_t t) -> Cached& {
    Cached& c = cache[{k, pi, xi, t}];
    if (!c.joint) {
      c.joint = std::make_unique<JointTable>(build_joint(phi_grid(k)[pi], xi0_grid(k)[xi], t));
      c.one_step = oracle_pointwise_ntic(*c.joint, InfoMode::OneStep);
    }
    return c;
  };
  auto oracle_value = [&](Cached& c, const Trajectory& path) {
    const std::size_t e = entry_of(*c.joint, path);
    if (!(c.joint->trajectory(e) == path)) throw std::logic_error("entry lookup mismatch");
    return c.one_step[e];
  };

  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> k_dist(1, 3);
  std::uniform_int_distribution<std::uint64_t> t_dist(1, 12);
  double worst = 0.0;
  double worst_invariance = 0.0;
  std::size_t invariance_checks = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = k_dist(rng);
    const auto phis = phi_grid(k);
    const auto xis = xi0_grid(k);
    std::uniform_int_distribution<std::size_t> pick_phi(0, phis.size() - 1), pick_xi(0, xis.size() - 1);
    const std::size_t pi = pick_phi(rng), xi = pick_xi(rng);
    const std::uint64_t t = t_dist(rng);
    const Trajectory path = sample_trajectory(phis[pi], t, rng);

    const double closed = one_step_pointwise_ntic(path);
    const double relative = std::log(static_cast<double>(count(path)[path.last()]) / static_cast<double>(t));
    worst = std::max({worst, std::abs(closed - oracle_value(lookup(k, pi, xi, t), path)), std::abs(closed - relative)});

    // A second (phi, xi0) under which the same path is possible.
    const std::size_t pi2 = (pi + 1 + rng() % phis.size()) % phis.size();
    const std::size_t xi2 = (xi + 1) % xis.size();
    if (trajectory_log_prob(phis[pi2], path) != kNegInf) {
      worst_invariance = std::max(worst_invariance, std::abs(closed - oracle_value(lookup(k, pi2, xi2, t), path)));
      ++invariance_checks;
    }
  }
  const bool pass = worst <= kOracleTol && worst_invariance <= kOracleTol && invariance_checks > 0;
  return {pass, "1000 sampled paths (K <= 3, t <= 12), max |ln freq - oracle MI-TE| = " + fmt(worst) +
                    "; " + std::to_string(invariance_checks) + " re-evaluated under another (phi, xi0), max diff " +
                    fmt(worst_invariance) + " (tol " + fmt(kOracleTol) + "); " + std::to_string(cache.size()) +
                    " joints built"};
}

// ---------------------------------------------------------------- 6

Outcome criterion_information_gain() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> k_dist(2, 4);
  std::uniform_int_distribution<std::size_t> t_dist(1, 25);
  std::uniform_real_distribution<double> xi_dist(0.05, 30.0);
  double worst_form = 0.0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = k_dist(rng);
    std::vector<double> alpha(k);
    for (double& a : alpha) a = xi_dist(rng);
    const Hyperparameter xi0(alpha);
    std::vector<Symbol> s(t_dist(rng));
    for (Symbol& x : s) x = rng() % k;
    const Trajectory path(Alphabet(k), s);
    const Trajectory before = path.prefix(path.size() - 1);
    const Symbol last = path.last();

    const double closed = one_step_info_gain(xi0, path).value;
    // Marginal surprise of the last observation, replayed from the prefix,
    // plus the expected log model probability under the updated belief.
    const double expectation_form =
        marginal_surprise(xi0, before, last) + expected_log_predictive(update(xi0, path), last);
    const double kl = dirichlet_kl(update(xi0, path), update(xi0, before));
    worst_form = std::max({worst_form, std::abs(closed - expectation_form), std::abs(closed - kl)});
  }

  double worst_quad = 0.0;
  std::size_t cases = 0;
  for (const Hyperparameter& xi0 : xi0_grid(2)) {
    for (const auto& c : {CountVector({1, 0}), CountVector({0, 1}), CountVector({2, 1}), CountVector({1, 3}),
                          CountVector({4, 4})}) {
      worst_quad = std::max(worst_quad,
                            std::abs(full_past_info_gain(xi0, c) - oracle_kl_quadrature(add_counts(xi0, c), xi0)));
      ++cases;
    }
  }

  const double spot = one_step_info_gain(Hyperparameter({1, 1}), Trajectory(Alphabet(2), {0})).value;
  const double spot_err = std::abs(spot - (ln2 - 0.5));

  const bool pass = worst_form <= kIgFormTol && worst_quad <= kIgQuadTol && spot_err <= kIgSpotTol && cases == 20;
  return {pass, "500 random pairs max |digamma - expectation form| = " + fmt(worst_form) + " (tol " +
                    fmt(kIgFormTol) + "); " + std::to_string(cases) + " Beta cases max |closed - quadrature| = " +
                    fmt(worst_quad) + " (tol " + fmt(kIgQuadTol) + "); |IG1 - (ln 2 - 1/2)| = " + fmt(spot_err)};
}

// ---------------------------------------------------------------- 7 and 8

Outcome criterion_witness() {
  const Trajectory path(Alphabet(2), {0});
  const WitnessReport w = ntic_ig_divergence_witness(path, Hyperparameter({1, 1}), Hyperparameter({10, 10}));
  const double ntic_a = one_step_pointwise_ntic(path);
  const bool pass = ntic_a == w.one_step_pointwise_ntic && w.gain_gap() > kWitnessGap;
  return {pass, "one-step pointwise NTIC " + fmt(w.one_step_pointwise_ntic) + " under both priors, IG1 " +
                    fmt(w.gain_a.value) + " vs " + fmt(w.gain_b.value) + ", gap " + fmt(w.gain_gap()) +
                    " (need > " + fmt(kWitnessGap) + ")"};
}

Outcome criterion_special_functions() {
  double worst_rec = 0.0;
  for (int i = 0; i <= 99500; ++i) {
    const double z = 0.5 + i * 0.001;
    worst_rec = std::max({worst_rec, std::abs(digamma(z + 1) - digamma(z) - 1 / z),
                          std::abs(log_gamma(z + 1) - log_gamma(z) - std::log(z))});
  }
  double worst_harm = 0.0, harmonic = 0.0;
  for (int n = 1; n <= 50; ++n) {
    worst_harm = std::max(worst_harm, std::abs(digamma(n) - (harmonic - kEulerGamma)));
    harmonic += 1.0 / n;
  }
  return {worst_rec <= kRecurrenceTol && worst_harm <= kHarmonicTol,
          "recurrence residual max " + fmt(worst_rec) + " on [0.5, 100] (tol " + fmt(kRecurrenceTol) +
              "); |Psi(n) - (H_{n-1} - gamma)| max " + fmt(worst_harm) + " for n <= 50 (tol " + fmt(kHarmonicTol) + ")"};
}

// ---------------------------------------------------------------- 9

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("ntic_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> configs = {
      "--phi 0.2,0.3,0.5 --tmax 30 --quantities ntic,one_step_ntic,pointwise,info_gain,surprise "
      "--exact-cap 200 --samples 500 --seed 42",
      "--phi 0.25,0.75 --xi0 0.5,2 --tmax 25 --quantities ntic,pointwise,info_gain --seed 7 --format json "
      "--units bits",
  };
  Outcome o;
  std::size_t bytes = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::vector<std::string> outputs;
    for (int run = 0; run < 3; ++run) {
      const auto file = dir / ("curve_" + std::to_string(c) + "_" + std::to_string(run));
      const std::string cmd =
          std::string("\"") + NTIC_TOOL_PATH + "\" curve " + configs[c] + " --out \"" + file.string() + "\"";
      if (std::system(cmd.c_str()) != 0) {
        o.pass = false;
        o.detail = "command failed: " + cmd;
        std::filesystem::remove_all(dir);
        return o;
      }
      outputs.push_back(slurp(file));
    }
    bytes += outputs.front().size();
    if (outputs.front().empty() || outputs[1] != outputs[0] || outputs[2] != outputs[0]) o.pass = false;
  }
  std::filesystem::remove_all(dir);
  o.detail = std::to_string(configs.size()) + " curve configurations x 3 runs, " + std::to_string(bytes) +
             " bytes per run set, " + (o.pass ? "byte-identical" : "outputs differ");
  return o;
}

}  // namespace

int main() {
  using Check = std::function<Outcome()>;
  GridResults grid;
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"closed-form vs oracle NTIC", [&] { return criterion_closed_form_vs_oracle(grid); }},
      {"initial-hyperparameter independence", [&] { return criterion_xi0_independence(grid); }},
      {"monotone divergence", criterion_monotone_divergence},
      {"binomial spot value", criterion_binomial_spot},
      {"one-step pointwise NTIC", criterion_one_step_pointwise},
      {"information-gain consistency", criterion_information_gain},
      {"negative-result witness", criterion_witness},
      {"special functions", criterion_special_functions},
      {"determinism", criterion_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
