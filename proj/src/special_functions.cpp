#include "ntic/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ntic/errors.hpp"

namespace ntic {
namespace {

// Both functions shift the argument up with the Gamma recurrence until the
// asymptotic series is accurate to double precision, then evaluate it.
constexpr double kAsymptoticThreshold = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..8: Stirling series coefficients.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,          1.0 / 1260.0,   -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,     1.0 / 156.0,    -3617.0 / 122400.0,
};

// B_{2k} / (2k), k = 1..8: digamma asymptotic coefficients.
constexpr std::array<double, 8> kDigammaSeries = {
    1.0 / 12.0,  -1.0 / 120.0,       1.0 / 252.0,  -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0,   1.0 / 12.0,   -3617.0 / 8160.0,
};

void require_positive(double z, const char* name) {
  if (!(z > 0.0)) {
    throw DomainError(std::string(name) + ": argument must be positive, got " +
                      std::to_string(z));
  }
}

double stirling_log_gamma(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

double asymptotic_digamma(double z) {
  const double inv2 = 1.0 / (z * z);
  double series = 0.0;
  double power = inv2;
  for (double c : kDigammaSeries) {
    series += c * power;
    power *= inv2;
  }
  return std::log(z) - 0.5 / z - series;
}

}  // namespace

double log_gamma(double z) {
  require_positive(z, "log_gamma");
  if (z >= kAsymptoticThreshold) return stirling_log_gamma(z);

  // ln Gamma(z) = ln Gamma(z+n) - ln(z (z+1) ... (z+n-1))
  double product = 1.0;
  double shifted = z;
  while (shifted < kAsymptoticThreshold) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

double digamma(double z) {
  require_positive(z, "digamma");
  double correction = 0.0;
  double shifted = z;
  while (shifted < kAsymptoticThreshold) {
    correction += 1.0 / shifted;
    shifted += 1.0;
  }
  return asymptotic_digamma(shifted) - correction;
}

}  // namespace ntic
