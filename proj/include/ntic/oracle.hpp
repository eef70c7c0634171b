#pragma once

// Definitional ground truth. The joint distribution of the unrolled Bayesian
// network (phi -> X_tau, (Xi_tau, X_tau) -> Xi_{tau+1}) is enumerated
// trajectory by trajectory, and every information quantity is recomputed as a
// (conditional) mutual information over its marginals. Nothing here uses the
// closed forms of closure.hpp or bayes.hpp.

#include <cstdint>
#include <vector>

#include "ntic/process.hpp"

namespace ntic {

struct JointLimits {
  std::uint64_t max_trajectories = 1'000'000;
};

// p(x_{<t}, xi_t, xi_{t-1} | xi0, phi) restricted to its support. The kernel
// is deterministic, so each entry is keyed by its trajectory and the
// hyperparameter states are derived from it.
class JointTable {
 public:
  JointTable(CategoricalParam phi, Hyperparameter xi0, std::uint64_t t);

  const CategoricalParam& phi() const noexcept { return phi_; }
  const Hyperparameter& xi0() const noexcept { return xi0_; }
  std::uint64_t t() const noexcept { return t_; }
  std::size_t size() const noexcept { return probabilities_.size(); }

  Trajectory trajectory(std::size_t entry) const;
  double probability(std::size_t entry) const { return probabilities_[entry]; }
  // Symbol observed at step `step` (0-based) of the entry's trajectory.
  Symbol symbol(std::size_t entry, std::uint64_t step) const;
  // xi_step reached from xi0 by running the kernel over the first `step`
  // observations.
  Hyperparameter xi_at(std::size_t entry, std::uint64_t step) const;
  // xi_step - xi0 as an exact integer vector; identifies the state xi_step.
  std::vector<std::uint64_t> state_key(std::size_t entry, std::uint64_t step) const;

  double total_probability() const;
  // Throws ConsistencyError unless the table sums to 1 and every entry obeys
  // xi_t = xi_{t-1} + one_hot(x_{t-1}).
  void verify() const;

 private:
  friend JointTable build_joint(const CategoricalParam&, const Hyperparameter&, std::uint64_t,
                                const JointLimits&);
  CategoricalParam phi_;
  Hyperparameter xi0_;
  std::uint64_t t_;
  std::vector<Symbol> support_;
  // Trajectory codes in base |support|, most significant digit first.
  std::vector<std::uint64_t> codes_;
  std::vector<double> probabilities_;
};

// Enumerates every nonzero-probability trajectory of length t. Throws
// ResourceError when there are more than limits.max_trajectories of them.
JointTable build_joint(const CategoricalParam& phi, const Hyperparameter& xi0, std::uint64_t t,
                       const JointLimits& limits = {});

enum class InfoMode { FullPast, OneStep };

// I(X_{<t} : Xi_t) (FullPast) or I(X_{t-1} : Xi_t) (OneStep).
double oracle_mutual_information(const JointTable& joint, InfoMode mode);

struct TransferEntropy {
  double last_observation = 0.0;  // I(Xi_t : X_{t-1} | Xi_{t-1})
  double full_past = 0.0;         // I(Xi_t : X_{<t} | Xi_{t-1})
};

// Both forms of the transfer entropy term. Throws ConsistencyError if they
// differ by more than 1e-10.
TransferEntropy oracle_transfer_entropy(const JointTable& joint);

double oracle_ntic(const CategoricalParam& phi, const Hyperparameter& xi0, std::uint64_t t,
                   InfoMode mode, const JointLimits& limits = {});
double oracle_ntic(const JointTable& joint, InfoMode mode);

// Pointwise MI minus pointwise TE for every entry of the joint, in entry order.
std::vector<double> oracle_pointwise_ntic(const JointTable& joint, InfoMode mode);

// KL[Beta(post) || Beta(prior)] by adaptive quadrature; both arguments must
// have two components. Absolute error target 1e-8.
double oracle_kl_quadrature(const Hyperparameter& xi_post, const Hyperparameter& xi_prior);

// E_xi[ln phi_hat_x] by quadrature over the Beta(xi_x, |xi| - xi_x) marginal.
double oracle_expected_log_quadrature(const Hyperparameter& xi, Symbol x);

}  // namespace ntic
