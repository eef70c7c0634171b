#pragma once

// Belief-level reading of the hyperparameter: Dirichlet beliefs over the
// categorical parameter, posterior predictive and surprise, and information
// gain (KL from prior belief to posterior belief).

#include <span>

#include "ntic/process.hpp"

namespace ntic {

// Dirichlet(xi) over candidate parameters phi_hat.
class DirichletBelief {
 public:
  explicit DirichletBelief(Hyperparameter xi) : xi_(std::move(xi)) {}

  const Hyperparameter& xi() const noexcept { return xi_; }
  // ln Gamma(|xi|) - sum_x ln Gamma(xi_x).
  double log_normalizer() const;
  // Log density at a point of the open simplex; kNegInf outside it.
  double log_density(std::span<const double> phi_hat) const;

 private:
  Hyperparameter xi_;
};

// One-step information gain and its decomposition into the marginal surprise
// of x_{t-1} before it was seen and the expected hindsight surprise under the
// updated belief. value = surprise_term - expected_hindsight_term.
struct InfoGainReport {
  double value = 0.0;
  double surprise_term = 0.0;
  double expected_hindsight_term = 0.0;
};

// xi_x / |xi|.
double posterior_predictive(const Hyperparameter& xi, Symbol x);

// -ln posterior_predictive(xi0 + c(traj), x). With x equal to the last symbol
// of traj this is the hindsight marginal surprise.
double marginal_surprise(const Hyperparameter& xi0, const Trajectory& traj, Symbol x);

// -ln(relative frequency of the last symbol); the negated one-step pointwise NTIC.
double hindsight_empirical_surprise(const Trajectory& traj);

// E_xi[ln phi_hat_x] = Psi(xi_x) - Psi(|xi|).
double expected_log_predictive(const Hyperparameter& xi, Symbol x);

// KL[Dir(posterior) || Dir(prior)] in closed form, for arbitrary positive
// parameter vectors of equal size.
double dirichlet_kl(const Hyperparameter& posterior, const Hyperparameter& prior);

// IG^1_t: KL between the beliefs at t and t-1 for the last symbol of traj.
InfoGainReport one_step_info_gain(const Hyperparameter& xi0, const Trajectory& traj);
// Same quantity from the sufficient statistics: the count c of the whole
// trajectory and its last symbol (which must have c[last] >= 1).
InfoGainReport one_step_info_gain(const Hyperparameter& xi0, const CountVector& c, Symbol last);

// IG_t: KL[Dir(xi0 + c) || Dir(xi0)], evaluated as ln g + sum_x c_x E[ln phi_hat_x].
double full_past_info_gain(const Hyperparameter& xi0, const CountVector& c);
double full_past_info_gain(const Hyperparameter& xi0, const Trajectory& traj);

// Constructive form of the negative result: one trajectory, two priors,
// identical one-step pointwise NTIC, different one-step information gain.
struct WitnessReport {
  double one_step_pointwise_ntic = 0.0;
  InfoGainReport gain_a;
  InfoGainReport gain_b;
  double gain_gap() const noexcept;
};

// Throws WitnessFailed when both gains agree within 1e-12.
WitnessReport ntic_ig_divergence_witness(const Trajectory& traj, const Hyperparameter& xi0_a,
                                         const Hyperparameter& xi0_b);

// KL values in (-kKlClampTolerance, 0) are reported as 0; anything more
// negative raises ConsistencyError.
inline constexpr double kKlClampTolerance = 1e-12;

}  // namespace ntic
