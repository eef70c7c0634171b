#include "ntic/closure.hpp"

#include <cmath>
#include <string>

#include "ntic/detail/summation.hpp"
#include "ntic/errors.hpp"

namespace ntic {

namespace {

// sum_y c_y ln phi_y, the log-probability of any single trajectory with
// count c; kNegInf if c uses a zero-probability symbol.
double single_trajectory_log_prob(const CategoricalParam& phi, const CountVector& c) {
  double lp = 0.0;
  for (std::size_t y = 0; y < c.size(); ++y) {
    if (c[y] == 0) continue;
    if (phi[y] == 0.0) return kNegInf;
    lp += static_cast<double>(c[y]) * std::log(phi[y]);
  }
  return lp;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(const CountVector& counts)
    : counts_(counts), probs_(counts.size()) {
  if (counts.total() == 0) {
    throw DomainError("empirical distribution of an empty trajectory is undefined");
  }
  const double total = static_cast<double>(counts.total());
  for (std::size_t x = 0; x < probs_.size(); ++x) {
    probs_[x] = static_cast<double>(counts[x]) / total;
  }
}

void check_count_space(std::size_t alphabet_size, std::uint64_t t,
                       const EnumerationLimits& limits) {
  const BigInt size = composition_count(alphabet_size, t);
  if (size > limits.max_counts) {
    throw ResourceError("count space for K=" + std::to_string(alphabet_size) +
                        ", t=" + std::to_string(t) + " has " + size.str() +
                        " elements (cap " + std::to_string(limits.max_counts) +
                        "); use Monte Carlo mode (--samples N)");
  }
}

double symbol_entropy(const CategoricalParam& phi) {
  detail::CompensatedSum h;
  for (double p : phi.probs()) {
    if (p > 0.0) h += -p * std::log(p);
  }
  return h.value();
}

double count_entropy(const CategoricalParam& phi, std::uint64_t t,
                     const EnumerationLimits& limits) {
  check_count_space(phi.size(), t, limits);
  detail::CompensatedSum h;
  for (const CountVector& c : CountCompositions(phi.size(), t)) {
    const double lp = count_log_prob(phi, c);
    if (lp == kNegInf) continue;
    h += -std::exp(lp) * lp;
  }
  return h.value();
}

NticReport ntic(const CategoricalParam& phi, std::uint64_t t, const EnumerationLimits& limits) {
  if (t == 0) throw DomainError("ntic: t must be at least 1");
  NticReport report;
  report.t = t;
  report.mi_term = count_entropy(phi, t, limits);
  report.te_term = symbol_entropy(phi);
  report.value = report.mi_term - report.te_term;
  return report;
}

double pointwise_ntic(const CategoricalParam& phi, const Trajectory& traj) {
  phi.alphabet().check_same(traj.alphabet(), "pointwise_ntic");
  if (traj.empty()) throw DomainError("pointwise_ntic: trajectory must be non-empty");
  if (trajectory_log_prob(phi, traj) == kNegInf) {
    throw DomainError("pointwise_ntic: trajectory has zero probability under phi");
  }
  return symbol_log_prob(phi, traj.last()) - count_log_prob(phi, count(traj));
}

double one_step_pointwise_ntic(const Trajectory& traj) {
  if (traj.empty()) throw DomainError("one_step_pointwise_ntic: trajectory must be non-empty");
  const CountVector c = count(traj);
  return std::log(static_cast<double>(c[traj.last()]) / static_cast<double>(c.total()));
}

double one_step_ntic(const CategoricalParam& phi, std::uint64_t t,
                     const EnumerationLimits& limits) {
  if (t == 0) throw DomainError("one_step_ntic: t must be at least 1");
  check_count_space(phi.size(), t, limits);
  // Trajectories with count c and last symbol x number |c^{-1}(c - e_x)|;
  // each has probability prod_y phi_y^{c_y}.
  const double length = static_cast<double>(t);
  detail::CompensatedSum total;
  for (const CountVector& c : CountCompositions(phi.size(), t)) {
    const double lp = single_trajectory_log_prob(phi, c);
    if (lp == kNegInf) continue;
    for (Symbol x = 0; x < c.size(); ++x) {
      if (c[x] == 0 || c[x] == t) continue;  // c[x] == t contributes ln 1 = 0
      const double weight = std::exp(log_inverse_count_cardinality(c.decremented(x)) + lp);
      total += weight * std::log(static_cast<double>(c[x]) / length);
    }
  }
  return total.value();
}

EmpiricalDistribution empirical_distribution(const Trajectory& traj) {
  if (traj.empty()) throw DomainError("empirical_distribution: trajectory must be non-empty");
  return EmpiricalDistribution(count(traj));
}

}  // namespace ntic
