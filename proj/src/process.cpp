#include "ntic/process.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ntic/errors.hpp"
#include "ntic/special_functions.hpp"

namespace ntic {

namespace {

constexpr std::uint64_t kExactLogCardinalityLimit = 64;

BigInt factorial(std::uint64_t n) {
  BigInt result = 1;
  for (std::uint64_t k = 2; k <= n; ++k) result *= k;
  return result;
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::size_t size) : size_(size) {
  if (size == 0) throw DomainError("Alphabet: size must be at least 1");
}

void Alphabet::check(Symbol x) const {
  if (x >= size_) {
    throw AlphabetMismatch("symbol " + std::to_string(x) + " is outside an alphabet of size " +
                           std::to_string(size_));
  }
}

void Alphabet::check_same(const Alphabet& other, const char* what) const {
  if (other.size_ != size_) {
    throw AlphabetMismatch(std::string(what) + ": alphabet sizes differ (" +
                           std::to_string(size_) + " vs " + std::to_string(other.size_) + ")");
  }
}

// -------------------------------------------------------- CategoricalParam

CategoricalParam::CategoricalParam(std::vector<double> probs)
    : probs_(std::move(probs)), alphabet_(probs_.size()) {
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("CategoricalParam: component " + std::to_string(p) +
                        " is not a probability");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("CategoricalParam: components sum to " + std::to_string(sum) +
                      ", not 1");
  }
}

std::size_t CategoricalParam::support_size() const noexcept {
  std::size_t n = 0;
  for (double p : probs_) n += p > 0.0 ? 1 : 0;
  return n;
}

// ---------------------------------------------------------- Hyperparameter

Hyperparameter::Hyperparameter(std::vector<double> alpha)
    : alpha_(std::move(alpha)), alphabet_(alpha_.size()), total_(0.0) {
  for (double a : alpha_) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw DomainError("Hyperparameter: component " + std::to_string(a) +
                        " is not a positive finite number");
    }
    total_ += a;
  }
}

Hyperparameter Hyperparameter::constant(std::size_t size, double value) {
  return Hyperparameter(std::vector<double>(size, value));
}

// -------------------------------------------------------------- Trajectory

Trajectory::Trajectory(Alphabet alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
  for (Symbol x : symbols_) alphabet_.check(x);
}

Symbol Trajectory::last() const {
  if (symbols_.empty()) throw DomainError("Trajectory::last: trajectory is empty");
  return symbols_.back();
}

Trajectory Trajectory::prefix(std::size_t n) const {
  if (n > symbols_.size()) throw DomainError("Trajectory::prefix: length exceeds trajectory");
  return Trajectory(alphabet_, std::vector<Symbol>(symbols_.begin(), symbols_.begin() + n));
}

void Trajectory::push_back(Symbol x) {
  alphabet_.check(x);
  symbols_.push_back(x);
}

// ------------------------------------------------------------- CountVector

CountVector::CountVector(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)),
      alphabet_(counts_.size()),
      total_(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0})) {}

CountVector CountVector::zeros(std::size_t size) {
  return CountVector(std::vector<std::uint64_t>(size, 0));
}

CountVector CountVector::one_hot(std::size_t size, Symbol x) {
  return zeros(size).incremented(x);
}

CountVector CountVector::incremented(Symbol x) const {
  alphabet_.check(x);
  CountVector out = *this;
  ++out.counts_[x];
  ++out.total_;
  return out;
}

CountVector CountVector::decremented(Symbol x) const {
  alphabet_.check(x);
  if (counts_[x] == 0) {
    throw DomainError("CountVector::decremented: count of symbol " + std::to_string(x) +
                      " is zero");
  }
  CountVector out = *this;
  --out.counts_[x];
  --out.total_;
  return out;
}

// -------------------------------------------------------------- operations

double symbol_log_prob(const CategoricalParam& phi, Symbol x) {
  phi.alphabet().check(x);
  const double p = phi[x];
  return p > 0.0 ? std::log(p) : kNegInf;
}

double trajectory_log_prob(const CategoricalParam& phi, const Trajectory& traj) {
  phi.alphabet().check_same(traj.alphabet(), "trajectory_log_prob");
  double total = 0.0;
  for (Symbol x : traj.symbols()) {
    const double lp = symbol_log_prob(phi, x);
    if (lp == kNegInf) return kNegInf;
    total += lp;
  }
  return total;
}

CountVector count(const Trajectory& traj) {
  std::vector<std::uint64_t> counts(traj.alphabet().size(), 0);
  for (Symbol x : traj.symbols()) ++counts[x];
  return CountVector(std::move(counts));
}

Hyperparameter update(const Hyperparameter& xi, Symbol x) {
  xi.alphabet().check(x);
  std::vector<double> next(xi.alpha().begin(), xi.alpha().end());
  next[x] += 1.0;
  return Hyperparameter(std::move(next));
}

Hyperparameter update(const Hyperparameter& xi, const Trajectory& traj) {
  xi.alphabet().check_same(traj.alphabet(), "update");
  Hyperparameter current = xi;
  for (Symbol x : traj.symbols()) current = update(current, x);
  return current;
}

Hyperparameter add_counts(const Hyperparameter& xi, const CountVector& c) {
  xi.alphabet().check_same(c.alphabet(), "add_counts");
  std::vector<double> next(xi.alpha().begin(), xi.alpha().end());
  for (std::size_t x = 0; x < next.size(); ++x) next[x] += static_cast<double>(c[x]);
  return Hyperparameter(std::move(next));
}

BigInt inverse_count_cardinality(const CountVector& c) {
  BigInt denominator = 1;
  for (std::uint64_t n : c.counts()) denominator *= factorial(n);
  return factorial(c.total()) / denominator;
}

double log_inverse_count_cardinality(const CountVector& c) {
  if (c.total() <= kExactLogCardinalityLimit) {
    return std::log(inverse_count_cardinality(c).convert_to<double>());
  }
  double result = log_gamma(static_cast<double>(c.total()) + 1.0);
  for (std::uint64_t n : c.counts()) result -= log_gamma(static_cast<double>(n) + 1.0);
  return result;
}

double count_log_prob(const CategoricalParam& phi, const CountVector& c) {
  phi.alphabet().check_same(c.alphabet(), "count_log_prob");
  double weight = 0.0;
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (c[x] == 0) continue;
    if (phi[x] == 0.0) return kNegInf;
    weight += static_cast<double>(c[x]) * std::log(phi[x]);
  }
  return log_inverse_count_cardinality(c) + weight;
}

BigInt composition_count(std::size_t alphabet_size, std::uint64_t t) {
  if (alphabet_size == 0) throw DomainError("composition_count: alphabet size must be >= 1");
  // binomial(t + K - 1, K - 1) by the multiplicative formula; every partial
  // quotient is itself a binomial coefficient, so the division is exact.
  BigInt result = 1;
  const std::uint64_t k = alphabet_size - 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= t + i;
    result /= i;
  }
  return result;
}

// ------------------------------------------------------- CountCompositions

CountCompositions::CountCompositions(std::size_t alphabet_size, std::uint64_t t)
    : alphabet_size_(alphabet_size), t_(t) {
  if (alphabet_size == 0) throw DomainError("CountCompositions: alphabet size must be >= 1");
}

CountCompositions::iterator CountCompositions::begin() const {
  std::vector<std::uint64_t> first(alphabet_size_, 0);
  first.back() = t_;
  return iterator(CountVector(std::move(first)));
}

CountCompositions::iterator& CountCompositions::iterator::operator++() {
  // Lexicographic successor: bump the rightmost position that still has mass
  // to its right, then move all of that remaining mass to the last slot.
  auto& c = current_.counts_;
  const std::size_t k = c.size();
  std::uint64_t suffix = c[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    if (suffix > 0) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = 0;
      c[k - 1] = suffix - 1;
      return *this;
    }
    suffix += c[i];
  }
  done_ = true;
  return *this;
}

// ---------------------------------------------------------------- sampling

Trajectory sample_trajectory(const CategoricalParam& phi, std::size_t t, std::mt19937_64& engine) {
  std::vector<double> cdf(phi.size());
  std::partial_sum(phi.probs().begin(), phi.probs().end(), cdf.begin());
  Symbol last_supported = 0;
  for (Symbol x = 0; x < phi.size(); ++x) {
    if (phi[x] > 0.0) last_supported = x;
  }

  Trajectory traj(phi.alphabet());
  for (std::size_t i = 0; i < t; ++i) {
    // 53 random bits mapped to [0, 1); identical on every platform.
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    Symbol drawn = last_supported;
    for (Symbol x = 0; x < phi.size(); ++x) {
      if (phi[x] > 0.0 && u < cdf[x]) {
        drawn = x;
        break;
      }
    }
    traj.push_back(drawn);
  }
  return traj;
}

Trajectory sample_trajectory(const CategoricalParam& phi, std::size_t t, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return sample_trajectory(phi, t, engine);
}

}  // namespace ntic
