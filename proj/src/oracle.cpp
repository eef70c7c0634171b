#include "ntic/oracle.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "ntic/detail/summation.hpp"
#include "ntic/errors.hpp"
#include "ntic/quadrature.hpp"

namespace ntic {

namespace {

using Key = std::vector<std::uint64_t>;
using KeyFn = std::function<Key(std::size_t)>;

constexpr double kDSeparationTolerance = 1e-10;
constexpr double kQuadratureTolerance = 1e-9;

Key concat(const Key& a, const Key& b) {
  Key out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Pointwise conditional mutual information
//   i(a : b | c) = ln p(a,b,c) p(c) / (p(a,c) p(b,c))
// for every entry, with the marginals accumulated from the joint itself.
// An empty c key gives plain pointwise mutual information.
struct PointwiseInformation {
  std::vector<double> values;
  double expectation = 0.0;
};

PointwiseInformation pointwise_information(const JointTable& joint, const KeyFn& key_a,
                                           const KeyFn& key_b, const KeyFn& key_c) {
  const std::size_t n = joint.size();
  std::vector<Key> abc(n), ac(n), bc(n), c(n);
  std::map<Key, double> p_abc, p_ac, p_bc, p_c;
  for (std::size_t i = 0; i < n; ++i) {
    const Key a = key_a(i);
    const Key b = key_b(i);
    c[i] = key_c(i);
    ac[i] = concat(a, c[i]);
    bc[i] = concat(b, c[i]);
    abc[i] = concat(a, bc[i]);
    const double p = joint.probability(i);
    p_abc[abc[i]] += p;
    p_ac[ac[i]] += p;
    p_bc[bc[i]] += p;
    p_c[c[i]] += p;
  }

  PointwiseInformation out;
  out.values.resize(n);
  detail::CompensatedSum expectation;
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = std::log(p_abc.at(abc[i]) * p_c.at(c[i]) / (p_ac.at(ac[i]) * p_bc.at(bc[i])));
    expectation += joint.probability(i) * out.values[i];
  }
  out.expectation = expectation.value();
  return out;
}

struct Keys {
  KeyFn trajectory;
  KeyFn current_state;   // xi_t
  KeyFn previous_state;  // xi_{t-1}
  KeyFn last_symbol;     // x_{t-1}
  KeyFn nothing;
};

Keys keys_for(const JointTable& joint) {
  if (joint.t() == 0) throw DomainError("oracle: information terms need t >= 1");
  const std::uint64_t t = joint.t();
  Keys k;
  k.trajectory = [&joint, t](std::size_t i) {
    Key key;
    for (std::uint64_t s = 0; s < t; ++s) key.push_back(joint.symbol(i, s));
    return key;
  };
  k.current_state = [&joint, t](std::size_t i) { return joint.state_key(i, t); };
  k.previous_state = [&joint, t](std::size_t i) { return joint.state_key(i, t - 1); };
  k.last_symbol = [&joint, t](std::size_t i) { return Key{joint.symbol(i, t - 1)}; };
  k.nothing = [](std::size_t) { return Key{}; };
  return k;
}

PointwiseInformation mutual_information_terms(const JointTable& joint, const Keys& k,
                                              InfoMode mode) {
  const KeyFn& observed = mode == InfoMode::FullPast ? k.trajectory : k.last_symbol;
  return pointwise_information(joint, observed, k.current_state, k.nothing);
}

}  // namespace

// -------------------------------------------------------------- JointTable

JointTable::JointTable(CategoricalParam phi, Hyperparameter xi0, std::uint64_t t)
    : phi_(std::move(phi)), xi0_(std::move(xi0)), t_(t) {
  phi_.alphabet().check_same(xi0_.alphabet(), "JointTable");
  for (Symbol x = 0; x < phi_.size(); ++x) {
    if (phi_[x] > 0.0) support_.push_back(x);
  }
}

Symbol JointTable::symbol(std::size_t entry, std::uint64_t step) const {
  if (step >= t_) throw DomainError("JointTable::symbol: step out of range");
  std::uint64_t code = codes_[entry];
  const std::uint64_t base = support_.size();
  for (std::uint64_t s = t_ - 1; s > step; --s) code /= base;
  return support_[code % base];
}

Trajectory JointTable::trajectory(std::size_t entry) const {
  Trajectory traj(phi_.alphabet());
  for (std::uint64_t s = 0; s < t_; ++s) traj.push_back(symbol(entry, s));
  return traj;
}

std::vector<std::uint64_t> JointTable::state_key(std::size_t entry, std::uint64_t step) const {
  std::vector<std::uint64_t> offset(phi_.size(), 0);
  for (std::uint64_t s = 0; s < step; ++s) ++offset[symbol(entry, s)];
  return offset;
}

Hyperparameter JointTable::xi_at(std::size_t entry, std::uint64_t step) const {
  Hyperparameter xi = xi0_;
  for (std::uint64_t s = 0; s < step; ++s) {
    std::vector<double> next(xi.alpha().begin(), xi.alpha().end());
    next[symbol(entry, s)] += 1.0;  // kernel: unit mass on xi + one_hot(x)
    xi = Hyperparameter(std::move(next));
  }
  return xi;
}

double JointTable::total_probability() const {
  detail::CompensatedSum total;
  for (double p : probabilities_) total += p;
  return total.value();
}

void JointTable::verify() const {
  if (std::abs(total_probability() - 1.0) > 1e-12) {
    throw ConsistencyError("JointTable: probabilities sum to " +
                           std::to_string(total_probability()));
  }
  if (t_ == 0) return;
  for (std::size_t i = 0; i < size(); ++i) {
    const Hyperparameter before = xi_at(i, t_ - 1);
    const Hyperparameter after = xi_at(i, t_);
    const Symbol last = symbol(i, t_ - 1);
    for (Symbol x = 0; x < phi_.size(); ++x) {
      const double expected = before[x] + (x == last ? 1.0 : 0.0);
      if (after[x] != expected) {
        throw ConsistencyError("JointTable: entry " + std::to_string(i) +
                               " violates the counter kernel");
      }
    }
  }
}

JointTable build_joint(const CategoricalParam& phi, const Hyperparameter& xi0, std::uint64_t t,
                       const JointLimits& limits) {
  JointTable joint(phi, xi0, t);
  const std::uint64_t base = joint.support_.size();
  std::uint64_t n = 1;
  for (std::uint64_t s = 0; s < t; ++s) {
    if (n > limits.max_trajectories / base) {
      throw ResourceError("build_joint: " + std::to_string(base) + "^" + std::to_string(t) +
                          " trajectories exceed the cap of " +
                          std::to_string(limits.max_trajectories));
    }
    n *= base;
  }

  joint.codes_.resize(n);
  joint.probabilities_.resize(n);
  std::vector<std::uint64_t> digits(t, 0);
  for (std::uint64_t code = 0; code < n; ++code) {
    double p = 1.0;
    for (std::uint64_t d : digits) p *= phi[joint.support_[d]];
    joint.codes_[code] = code;
    joint.probabilities_[code] = p;
    // Odometer increment, least significant digit last.
    for (std::uint64_t s = t; s-- > 0;) {
      if (++digits[s] < base) break;
      digits[s] = 0;
    }
  }
  return joint;
}

// ------------------------------------------------------ information terms

double oracle_mutual_information(const JointTable& joint, InfoMode mode) {
  return mutual_information_terms(joint, keys_for(joint), mode).expectation;
}

TransferEntropy oracle_transfer_entropy(const JointTable& joint) {
  const Keys k = keys_for(joint);
  TransferEntropy te;
  te.last_observation =
      pointwise_information(joint, k.current_state, k.last_symbol, k.previous_state).expectation;
  te.full_past =
      pointwise_information(joint, k.current_state, k.trajectory, k.previous_state).expectation;
  if (std::abs(te.last_observation - te.full_past) > kDSeparationTolerance) {
    throw ConsistencyError("oracle_transfer_entropy: conditioning on x_{t-1} gives " +
                           std::to_string(te.last_observation) + " but on x_{<t} gives " +
                           std::to_string(te.full_past));
  }
  return te;
}

double oracle_ntic(const JointTable& joint, InfoMode mode) {
  return oracle_mutual_information(joint, mode) - oracle_transfer_entropy(joint).last_observation;
}

double oracle_ntic(const CategoricalParam& phi, const Hyperparameter& xi0, std::uint64_t t,
                   InfoMode mode, const JointLimits& limits) {
  return oracle_ntic(build_joint(phi, xi0, t, limits), mode);
}

std::vector<double> oracle_pointwise_ntic(const JointTable& joint, InfoMode mode) {
  const Keys k = keys_for(joint);
  const PointwiseInformation mi = mutual_information_terms(joint, k, mode);
  const PointwiseInformation te =
      pointwise_information(joint, k.current_state, k.last_symbol, k.previous_state);
  std::vector<double> out(joint.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mi.values[i] - te.values[i];
  return out;
}

// ------------------------------------------------------------- quadrature

namespace {

// ln B(a, b) from the C library, independent of the in-repo log_gamma.
double library_log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

double oracle_kl_quadrature(const Hyperparameter& xi_post, const Hyperparameter& xi_prior) {
  if (xi_post.size() != 2 || xi_prior.size() != 2) {
    throw DomainError("oracle_kl_quadrature: only the two-symbol (Beta) case is supported");
  }
  const double a1 = xi_post[0], b1 = xi_post[1];
  const double a0 = xi_prior[0], b0 = xi_prior[1];
  const double ln_b1 = library_log_beta(a1, b1);
  const double ln_b0 = library_log_beta(a0, b0);
  const double offset = ln_b0 - ln_b1;

  // ln(q_post / q_prior) at x.
  const auto log_ratio = [&](double ln_x, double ln_y) {
    return offset + (a1 - a0) * ln_x + (b1 - b0) * ln_y;
  };
  const BetaExpectationBound bound{std::abs(offset), std::abs(a1 - a0), std::abs(b1 - b0)};
  return beta_expectation(a1, b1, ln_b1, log_ratio, bound, kQuadratureTolerance).value;
}

double oracle_expected_log_quadrature(const Hyperparameter& xi, Symbol x) {
  xi.alphabet().check(x);
  if (xi.size() == 1) return 0.0;  // phi_hat_x = 1 almost surely
  const double a = xi[x];
  const double b = xi.total() - xi[x];
  const auto log_x = [](double ln_x, double) { return ln_x; };
  return beta_expectation(a, b, library_log_beta(a, b), log_x, {0.0, 1.0, 0.0},
                          kQuadratureTolerance)
      .value;
}

}  // namespace ntic
