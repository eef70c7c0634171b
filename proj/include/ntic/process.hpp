#pragma once

// IID categorical data process, the Dirichlet hyperparameter counter that
// tracks it, and the count combinatorics shared by every other module.
//
// All probabilities are natural-log valued. A zero-probability event has
// log-probability kNegInf.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ntic {

using Symbol = std::size_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Finite sample space {0, ..., size-1}.
class Alphabet {
 public:
  explicit Alphabet(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool contains(Symbol x) const noexcept { return x < size_; }
  // Throws AlphabetMismatch if x is not a symbol of this alphabet.
  void check(Symbol x) const;
  // Throws AlphabetMismatch unless `other` has the same size.
  void check_same(const Alphabet& other, const char* what) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::size_t size_;
};

// Parameter phi of the IID process: a probability vector over the alphabet.
class CategoricalParam {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit CategoricalParam(std::vector<double> probs);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](Symbol x) const { return probs_[x]; }
  // Number of symbols with nonzero probability.
  std::size_t support_size() const noexcept;

  bool operator==(const CategoricalParam&) const = default;

 private:
  std::vector<double> probs_;
  Alphabet alphabet_;
};

// Dirichlet concentration vector xi; every component strictly positive.
class Hyperparameter {
 public:
  explicit Hyperparameter(std::vector<double> alpha);
  static Hyperparameter constant(std::size_t size, double value);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return alpha_.size(); }
  std::span<const double> alpha() const noexcept { return alpha_; }
  double operator[](Symbol x) const { return alpha_[x]; }
  // |xi|, the sum of all components.
  double total() const noexcept { return total_; }

  bool operator==(const Hyperparameter& other) const { return alpha_ == other.alpha_; }

 private:
  std::vector<double> alpha_;
  Alphabet alphabet_;
  double total_;
};

// Finite observed sequence x_0 ... x_{t-1}.
class Trajectory {
 public:
  explicit Trajectory(Alphabet alphabet, std::vector<Symbol> symbols = {});

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  // Last observation x_{t-1}; throws DomainError on an empty trajectory.
  Symbol last() const;
  // First n symbols.
  Trajectory prefix(std::size_t n) const;
  void push_back(Symbol x);

  bool operator==(const Trajectory&) const = default;

 private:
  Alphabet alphabet_;
  std::vector<Symbol> symbols_;
};

// Occurrence counts per symbol, c(x_{t:t+n}).
class CountVector {
 public:
  explicit CountVector(std::vector<std::uint64_t> counts);
  static CountVector zeros(std::size_t size);
  static CountVector one_hot(std::size_t size, Symbol x);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return counts_.size(); }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t operator[](Symbol x) const { return counts_[x]; }
  std::uint64_t total() const noexcept { return total_; }

  CountVector incremented(Symbol x) const;
  // Throws DomainError if counts[x] is already zero.
  CountVector decremented(Symbol x) const;

  bool operator==(const CountVector& other) const { return counts_ == other.counts_; }
  auto operator<=>(const CountVector& other) const { return counts_ <=> other.counts_; }

 private:
  friend class CountCompositions;
  std::vector<std::uint64_t> counts_;
  Alphabet alphabet_;
  std::uint64_t total_;
};

// ln p(x | phi); kNegInf when phi_x = 0.
double symbol_log_prob(const CategoricalParam& phi, Symbol x);

// Sum of per-symbol log probabilities; 0 for the empty trajectory.
double trajectory_log_prob(const CategoricalParam& phi, const Trajectory& traj);

CountVector count(const Trajectory& traj);

// One counter step: xi + one_hot(x).
Hyperparameter update(const Hyperparameter& xi, Symbol x);
// Sequential application of update() over the trajectory.
Hyperparameter update(const Hyperparameter& xi, const Trajectory& traj);
// Batch form: xi + c.
Hyperparameter add_counts(const Hyperparameter& xi, const CountVector& c);

// |c^{-1}(c)| = (sum c)! / prod c_x!, exact.
BigInt inverse_count_cardinality(const CountVector& c);
// ln |c^{-1}(c)|. Exact integer route for totals up to 64, log-gamma above.
double log_inverse_count_cardinality(const CountVector& c);

// Multinomial log-pmf ln p(c | phi).
double count_log_prob(const CategoricalParam& phi, const CountVector& c);

// Number of count vectors of total t over K symbols: binomial(t+K-1, K-1).
BigInt composition_count(std::size_t alphabet_size, std::uint64_t t);

// Every count vector over K symbols with total t, once each, in increasing
// lexicographic order. Each range is an independent single-pass stream.
class CountCompositions {
 public:
  CountCompositions(std::size_t alphabet_size, std::uint64_t t);

  class iterator {
   public:
    using value_type = CountVector;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const CountVector& operator*() const { return current_; }
    const CountVector* operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const noexcept { return done_; }

   private:
    friend class CountCompositions;
    explicit iterator(CountVector first) : current_(std::move(first)) {}
    CountVector current_ = CountVector::zeros(1);
    bool done_ = false;
  };

  iterator begin() const;
  std::default_sentinel_t end() const noexcept { return {}; }

 private:
  std::size_t alphabet_size_;
  std::uint64_t t_;
};

// IID draw of t symbols via inverse CDF. Deterministic for a fixed seed.
Trajectory sample_trajectory(const CategoricalParam& phi, std::size_t t, std::uint64_t seed);
Trajectory sample_trajectory(const CategoricalParam& phi, std::size_t t, std::mt19937_64& engine);

}  // namespace ntic
