#pragma once

namespace ntic {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// ln Gamma(z) for z > 0. Absolute error below 1e-12 for z >= 0.5.
// Throws DomainError for z <= 0 or NaN.
double log_gamma(double z);

// Psi(z) = d/dz ln Gamma(z) for z > 0. Absolute error below 1e-10 for
// z >= 1e-3. Throws DomainError for z <= 0 or NaN.
double digamma(double z);

}  // namespace ntic
