#pragma once

// Non-trivial informational closure of the hyperparameter counter, full-past
// and one-step, expected and pointwise, evaluated in closed form by
// enumerating count space.

#include <cstdint>
#include <span>
#include <vector>

#include "ntic/process.hpp"

namespace ntic {

// Size caps for exact count-space enumeration.
struct EnumerationLimits {
  std::uint64_t max_counts = 10'000'000;
};

// NTIC_t = I(X_{<t} : Xi_t) - I(Xi_t : X_{t-1} | Xi_{t-1}), in nats.
struct NticReport {
  std::uint64_t t = 0;
  double value = 0.0;
  double mi_term = 0.0;
  double te_term = 0.0;
};

// Relative frequencies of a non-empty trajectory.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(const CountVector& counts);

  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](Symbol x) const { return probs_[x]; }
  const CountVector& counts() const noexcept { return counts_; }

 private:
  CountVector counts_;
  std::vector<double> probs_;
};

// H(X | phi) with 0 ln 0 = 0.
double symbol_entropy(const CategoricalParam& phi);

// H(C_t | phi), exact sum over count space. Throws ResourceError when the
// count space is larger than limits.max_counts.
double count_entropy(const CategoricalParam& phi, std::uint64_t t,
                     const EnumerationLimits& limits = {});

// Full-past NTIC. Independent of the initial hyperparameter. Requires t >= 1.
NticReport ntic(const CategoricalParam& phi, std::uint64_t t, const EnumerationLimits& limits = {});

// ln p(x_{t-1} | phi) - ln p(c(x_{<t}) | phi). Requires a non-empty
// trajectory with nonzero probability under phi.
double pointwise_ntic(const CategoricalParam& phi, const Trajectory& traj);

// ln(c(x_{<t})_{x_{t-1}} / t): log relative frequency of the last symbol.
double one_step_pointwise_ntic(const Trajectory& traj);

// Expectation of one_step_pointwise_ntic over all length-t trajectories.
double one_step_ntic(const CategoricalParam& phi, std::uint64_t t,
                     const EnumerationLimits& limits = {});

EmpiricalDistribution empirical_distribution(const Trajectory& traj);

// Throws ResourceError if enumerating count vectors of total t over the
// alphabet of phi would exceed the cap.
void check_count_space(std::size_t alphabet_size, std::uint64_t t, const EnumerationLimits& limits);

}  // namespace ntic
