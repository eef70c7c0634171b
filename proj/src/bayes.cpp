#include "ntic/bayes.hpp"

#include <cmath>
#include <string>

#include "ntic/closure.hpp"
#include "ntic/detail/summation.hpp"
#include "ntic/errors.hpp"
#include "ntic/special_functions.hpp"

namespace ntic {

namespace {

double clamp_kl(double value, const char* what) {
  if (value >= 0.0) return value;
  if (value > -kKlClampTolerance) return 0.0;
  throw ConsistencyError(std::string(what) + ": KL divergence evaluated to " +
                         std::to_string(value));
}

}  // namespace

double DirichletBelief::log_normalizer() const {
  double result = log_gamma(xi_.total());
  for (double a : xi_.alpha()) result -= log_gamma(a);
  return result;
}

double DirichletBelief::log_density(std::span<const double> phi_hat) const {
  if (phi_hat.size() != xi_.size()) {
    throw AlphabetMismatch("DirichletBelief::log_density: point has wrong dimension");
  }
  double sum = 0.0;
  double result = log_normalizer();
  for (std::size_t x = 0; x < phi_hat.size(); ++x) {
    if (!(phi_hat[x] > 0.0)) return kNegInf;
    sum += phi_hat[x];
    result += (xi_[x] - 1.0) * std::log(phi_hat[x]);
  }
  if (std::abs(sum - 1.0) > 1e-12) return kNegInf;
  return result;
}

double posterior_predictive(const Hyperparameter& xi, Symbol x) {
  xi.alphabet().check(x);
  return xi[x] / xi.total();
}

double marginal_surprise(const Hyperparameter& xi0, const Trajectory& traj, Symbol x) {
  return -std::log(posterior_predictive(add_counts(xi0, count(traj)), x));
}

double hindsight_empirical_surprise(const Trajectory& traj) {
  if (traj.empty()) throw DomainError("hindsight_empirical_surprise: trajectory must be non-empty");
  return 0.0 - one_step_pointwise_ntic(traj);
}

double expected_log_predictive(const Hyperparameter& xi, Symbol x) {
  xi.alphabet().check(x);
  return digamma(xi[x]) - digamma(xi.total());
}

double dirichlet_kl(const Hyperparameter& posterior, const Hyperparameter& prior) {
  posterior.alphabet().check_same(prior.alphabet(), "dirichlet_kl");
  detail::CompensatedSum kl;
  kl += log_gamma(posterior.total());
  kl += -log_gamma(prior.total());
  const double psi_total = digamma(posterior.total());
  for (std::size_t x = 0; x < posterior.size(); ++x) {
    kl += log_gamma(prior[x]) - log_gamma(posterior[x]);
    kl += (posterior[x] - prior[x]) * (digamma(posterior[x]) - psi_total);
  }
  return clamp_kl(kl.value(), "dirichlet_kl");
}

InfoGainReport one_step_info_gain(const Hyperparameter& xi0, const CountVector& c, Symbol last) {
  xi0.alphabet().check_same(c.alphabet(), "one_step_info_gain");
  xi0.alphabet().check(last);
  if (c[last] == 0) {
    throw DomainError("one_step_info_gain: the last symbol must be among the counted ones");
  }

  // Predictive probability of x_{t-1} under xi_{t-1} = xi0 + c - e_{x_{t-1}}.
  // The integer parts are subtracted first so that xi0 is never shifted by -1.
  const double numerator = xi0[last] + static_cast<double>(c[last] - 1);
  const double denominator = xi0.total() + static_cast<double>(c.total() - 1);

  InfoGainReport report;
  report.surprise_term = -std::log(numerator / denominator);
  report.expected_hindsight_term = -expected_log_predictive(add_counts(xi0, c), last);
  report.value = clamp_kl(report.surprise_term - report.expected_hindsight_term,
                          "one_step_info_gain");
  return report;
}

InfoGainReport one_step_info_gain(const Hyperparameter& xi0, const Trajectory& traj) {
  xi0.alphabet().check_same(traj.alphabet(), "one_step_info_gain");
  if (traj.empty()) throw DomainError("one_step_info_gain: trajectory must be non-empty");
  return one_step_info_gain(xi0, count(traj), traj.last());
}

double full_past_info_gain(const Hyperparameter& xi0, const CountVector& c) {
  xi0.alphabet().check_same(c.alphabet(), "full_past_info_gain");
  if (c.total() == 0) return 0.0;
  const Hyperparameter posterior = add_counts(xi0, c);

  // ln g(x_{<t}, xi0): the count-independent factor of the density ratio.
  detail::CompensatedSum log_g;
  log_g += log_gamma(posterior.total());
  log_g += -log_gamma(xi0.total());
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (c[x] == 0) continue;
    log_g += log_gamma(xi0[x]) - log_gamma(posterior[x]);
  }

  // E_{posterior}[ln q(x_{<t} | phi_hat)] = sum_x c_x E[ln phi_hat_x].
  detail::CompensatedSum expected_log_likelihood;
  for (Symbol x = 0; x < c.size(); ++x) {
    if (c[x] == 0) continue;
    expected_log_likelihood += static_cast<double>(c[x]) * expected_log_predictive(posterior, x);
  }
  return clamp_kl(log_g.value() + expected_log_likelihood.value(), "full_past_info_gain");
}

double full_past_info_gain(const Hyperparameter& xi0, const Trajectory& traj) {
  xi0.alphabet().check_same(traj.alphabet(), "full_past_info_gain");
  return full_past_info_gain(xi0, count(traj));
}

double WitnessReport::gain_gap() const noexcept {
  return std::abs(gain_a.value - gain_b.value);
}

WitnessReport ntic_ig_divergence_witness(const Trajectory& traj, const Hyperparameter& xi0_a,
                                         const Hyperparameter& xi0_b) {
  xi0_a.alphabet().check_same(xi0_b.alphabet(), "ntic_ig_divergence_witness");
  WitnessReport report;
  report.one_step_pointwise_ntic = one_step_pointwise_ntic(traj);
  report.gain_a = one_step_info_gain(xi0_a, traj);
  report.gain_b = one_step_info_gain(xi0_b, traj);
  if (!(report.gain_gap() > 1e-12)) {
    throw WitnessFailed("information gains agree within 1e-12 (" +
                        std::to_string(report.gain_a.value) +
                        "); choose initial hyperparameters that differ in the "
                        "component or total seen by the last observation");
  }
  return report;
}

}  // namespace ntic
