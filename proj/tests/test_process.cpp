#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ntic/errors.hpp"
#include "ntic/process.hpp"
#include "support/brute_force.hpp"

using namespace ntic;

namespace {

Trajectory traj(std::size_t k, std::vector<Symbol> s) { return Trajectory(Alphabet(k), std::move(s)); }

std::vector<CategoricalParam> small_grid(std::size_t k) {
  switch (k) {
    case 1: return {CategoricalParam({1.0})};
    case 2: return {CategoricalParam({0.5, 0.5}), CategoricalParam({0.2, 0.8}), CategoricalParam({1.0, 0.0})};
    default:
      return {CategoricalParam({0.2, 0.3, 0.5}), CategoricalParam({0.7, 0.3, 0.0}),
              CategoricalParam({1.0 / 3, 1.0 / 3, 1.0 / 3})};
  }
}

}  // namespace

TEST_CASE("value types validate their invariants") {
  CHECK_THROWS_AS(Alphabet(0), DomainError);
  CHECK_THROWS_AS(CategoricalParam({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(CategoricalParam({-0.1, 1.1}), DomainError);
  CHECK_NOTHROW(CategoricalParam({0.5, 0.5 + 5e-13}));
  CHECK_THROWS_AS(Hyperparameter({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Hyperparameter({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(Hyperparameter({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(traj(2, {0, 2}), AlphabetMismatch);
  CHECK_THROWS_AS(traj(2, {}).last(), DomainError);
  CHECK(Hyperparameter({0.5, 2.5}).total() == 3.0);
  CHECK(CategoricalParam({0.7, 0.3, 0.0}).support_size() == 2);
}

TEST_CASE("symbol and trajectory log probabilities") {
  const CategoricalParam fair({0.5, 0.5});
  CHECK(symbol_log_prob(fair, 0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(symbol_log_prob(CategoricalParam({1.0, 0.0}), 1) == kNegInf);
  CHECK(symbol_log_prob(CategoricalParam({0.2, 0.3, 0.5}), 2) == std::log(0.5));
  CHECK_THROWS_AS(symbol_log_prob(fair, 2), AlphabetMismatch);

  CHECK(trajectory_log_prob(fair, traj(2, {0, 1, 0})) == doctest::Approx(3 * std::log(0.5)));
  CHECK(trajectory_log_prob(fair, traj(2, {})) == 0.0);
  CHECK(trajectory_log_prob(CategoricalParam({0.2, 0.8}), traj(2, {1, 1})) ==
        doctest::Approx(std::log(0.64)));
  CHECK(trajectory_log_prob(CategoricalParam({1.0, 0.0}), traj(2, {0, 1})) == kNegInf);
  CHECK_THROWS_AS(trajectory_log_prob(fair, traj(3, {0})), AlphabetMismatch);
}

TEST_CASE("count") {
  CHECK(count(traj(2, {0, 1, 0})) == CountVector({2, 1}));
  CHECK(count(traj(2, {})) == CountVector({0, 0}));
  CHECK(count(traj(3, {2, 2, 2})) == CountVector({0, 0, 3}));
  CHECK(count(traj(3, {2, 2, 2})).total() == 3);
  CHECK_THROWS_AS(CountVector({1, 0}).decremented(1), DomainError);
}

TEST_CASE("hyperparameter update") {
  CHECK(update(Hyperparameter({1, 1}), 0) == Hyperparameter({2, 1}));
  CHECK(update(Hyperparameter({0.5, 2.5}), 1) == Hyperparameter({0.5, 3.5}));
  CHECK(update(Hyperparameter({1, 1, 1}), traj(3, {0, 0, 2})) == Hyperparameter({3, 1, 2}));
  CHECK_THROWS_AS(update(Hyperparameter({1, 1}), 2), AlphabetMismatch);

  // Symbol-by-symbol updates equal one batch addition of the counts.
  const Hyperparameter xi0({0.3, 1.7, 4.0});
  for (std::uint64_t t = 0; t <= 6; ++t) {
    for (const auto& seq : brute::all_sequences(3, t)) {
      Hyperparameter xi = xi0;
      for (Symbol s : seq) xi = update(xi, s);
      const Trajectory tr = traj(3, seq);
      REQUIRE(xi == add_counts(xi0, count(tr)));
      REQUIRE(xi == update(xi0, tr));
    }
  }
}

TEST_CASE("inverse count cardinality") {
  CHECK(inverse_count_cardinality(CountVector({2, 1})) == 3);
  CHECK(inverse_count_cardinality(CountVector({0, 0})) == 1);
  CHECK(inverse_count_cardinality(CountVector({1, 1, 1})) == 6);
  // 100! / (50! 50!) needs more than 64 bits.
  const BigInt big = inverse_count_cardinality(CountVector({50, 50}));
  CHECK(big.str() == "100891344545564193334812497256");
  CHECK(log_inverse_count_cardinality(CountVector({50, 50})) ==
        doctest::Approx(std::log(1.00891344545564193334812497256e29)).epsilon(1e-14));
  CHECK(log_inverse_count_cardinality(CountVector({30, 20, 14})) ==
        doctest::Approx(std::log(static_cast<double>(inverse_count_cardinality(CountVector({30, 20, 14}))))));

  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::uint64_t t = 0; t <= 8; ++t) {
      for (const CountVector& c : CountCompositions(k, t)) {
        const std::vector<std::uint64_t> raw(c.counts().begin(), c.counts().end());
        REQUIRE(inverse_count_cardinality(c) == brute::cardinality(raw));
      }
    }
  }
}

TEST_CASE("count log probability") {
  const CategoricalParam fair({0.5, 0.5});
  CHECK(count_log_prob(fair, CountVector({1, 1})) == doctest::Approx(std::log(0.5)));
  CHECK(count_log_prob(CategoricalParam({1, 0}), CountVector({3, 0})) == 0.0);
  CHECK(count_log_prob(CategoricalParam({1, 0}), CountVector({2, 1})) == kNegInf);
  CHECK(count_log_prob(fair, CountVector({2, 0})) == doctest::Approx(std::log(0.25)));
  CHECK_THROWS_AS(count_log_prob(fair, CountVector({1, 1, 0})), AlphabetMismatch);

  for (std::size_t k = 1; k <= 3; ++k) {
    for (const CategoricalParam& phi : small_grid(k)) {
      for (std::uint64_t t = 0; t <= 8; ++t) {
        double total = 0.0;
        for (const CountVector& c : CountCompositions(k, t)) {
          const double p = std::exp(count_log_prob(phi, c));
          const std::vector<std::uint64_t> raw(c.counts().begin(), c.counts().end());
          REQUIRE(std::abs(p - brute::count_probability(phi, raw)) <= 1e-12);
          total += p;
        }
        REQUIRE(std::abs(total - 1.0) <= 1e-10);
      }
    }
  }
}

TEST_CASE("count compositions") {
  std::vector<CountVector> got;
  for (const CountVector& c : CountCompositions(2, 2)) got.push_back(c);
  CHECK(got == std::vector<CountVector>{CountVector({0, 2}), CountVector({1, 1}), CountVector({2, 0})});

  got.clear();
  for (const CountVector& c : CountCompositions(1, 5)) got.push_back(c);
  CHECK(got == std::vector<CountVector>{CountVector({5})});

  std::size_t n = 0;
  for ([[maybe_unused]] const CountVector& c : CountCompositions(3, 2)) ++n;
  CHECK(n == 6);

  got.clear();
  for (const CountVector& c : CountCompositions(4, 0)) got.push_back(c);
  CHECK(got == std::vector<CountVector>{CountVector({0, 0, 0, 0})});

  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::uint64_t t = 0; t <= 9; ++t) {
      std::set<CountVector> seen;
      for (const CountVector& c : CountCompositions(k, t)) {
        REQUIRE(c.total() == t);
        REQUIRE(seen.insert(c).second);
      }
      REQUIRE(BigInt(seen.size()) == composition_count(k, t));
    }
  }
}

TEST_CASE("sampling") {
  const CategoricalParam fair({0.5, 0.5});
  CHECK(sample_trajectory(fair, 0, 7).empty());
  CHECK(sample_trajectory(CategoricalParam({1, 0}), 4, 123) == traj(2, {0, 0, 0, 0}));
  CHECK(sample_trajectory(fair, 50, 9) == sample_trajectory(fair, 50, 9));
  CHECK(sample_trajectory(fair, 50, 9) != sample_trajectory(fair, 50, 10));
  // Zero-probability symbols never appear.
  CHECK(count(sample_trajectory(CategoricalParam({0.7, 0.0, 0.3}), 5000, 3))[1] == 0);

  const Trajectory long_run = sample_trajectory(fair, 10000, 2024);
  const double freq = static_cast<double>(count(long_run)[0]) / 10000.0;
  CHECK(freq >= 0.48);
  CHECK(freq <= 0.52);
}
