#pragma once

#include <cstddef>
#include <functional>

namespace ntic {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t intervals = 0;
};

// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]. Bisects the
// interval with the largest error estimate until the summed estimate is at
// most abs_tol. Throws NumericalError, with the reached estimate and interval
// count, if max_intervals is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals = 4000);

// Expectation of h under Beta(a, b), integrated over the open unit interval.
//
// h receives (ln x, ln(1-x)), both accurate near either endpoint. The caller
// bounds |h| <= bound_constant + bound_log_x |ln x| + bound_log_y |ln(1-x)|;
// that bound sizes the discarded tails so that each is below tail_tol. Each
// half of the interval is mapped to [ln 2, L] by x = exp(-s) (or 1-x =
// exp(-s)), which turns the endpoint power singularities into exponential
// decay. ln_beta is ln B(a, b), supplied by the caller.
struct BetaExpectationBound {
  double constant = 0.0;
  double log_x = 0.0;
  double log_y = 0.0;
};

QuadratureResult beta_expectation(double a, double b, double ln_beta,
                                  const std::function<double(double, double)>& h,
                                  const BetaExpectationBound& bound, double abs_tol,
                                  double tail_tol = 1e-11);

}  // namespace ntic
