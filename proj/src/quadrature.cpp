#include "ntic/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "ntic/detail/summation.hpp"
#include "ntic/errors.hpp"

namespace ntic {

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are
// shared with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

// Natural log of the discarded-tail bound on (0, exp(-cutoff)) for a Beta
// density with near-endpoint exponent `a` and far exponent `b`.
double log_tail_bound(double a, double b, double ln_beta, double c_near_log, double c_const,
                      double cutoff) {
  const double log_far_max = b >= 1.0 ? 0.0 : (1.0 - b) * std::numbers::ln2;
  const double magnitude = c_const + c_near_log * (cutoff + 1.0 / a);
  if (magnitude <= 0.0) return -std::numeric_limits<double>::infinity();
  return log_far_max - ln_beta - a * cutoff - std::log(a) + std::log(magnitude);
}

double choose_cutoff(double a, double b, double ln_beta, double c_near_log, double c_const,
                     double tail_tol) {
  constexpr double kMaxCutoff = 1e7;
  const double target = std::log(tail_tol);
  double cutoff = 2.0;
  while (log_tail_bound(a, b, ln_beta, c_near_log, c_const, cutoff) > target) {
    cutoff *= 2.0;
    if (cutoff > kMaxCutoff) {
      std::ostringstream msg;
      msg << "beta_expectation: tail below " << tail_tol << " needs cutoff beyond exp(-"
          << kMaxCutoff << ") for exponent " << a;
      throw NumericalError(msg.str());
    }
  }
  return cutoff;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals) {
  std::priority_queue<Segment> work;
  work.push(gauss_kronrod(f, a, b));
  double error = work.top().error;

  while (error > abs_tol) {
    if (work.size() >= max_intervals) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "integrate_adaptive: no convergence on [" << a << ", " << b << "] after "
          << work.size() << " intervals; error estimate " << error << " > tolerance " << abs_tol
          << "; worst interval [" << work.top().a << ", " << work.top().b << "]";
      throw NumericalError(msg.str());
    }
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    work.push(left);
    work.push(right);
    error += left.error + right.error - worst.error;
  }

  std::vector<Segment> segments;
  segments.reserve(work.size());
  while (!work.empty()) {
    segments.push_back(work.top());
    work.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  detail::CompensatedSum value;
  detail::CompensatedSum total_error;
  for (const Segment& s : segments) {
    value += s.value;
    total_error += s.error;
  }
  return {value.value(), total_error.value(), segments.size()};
}

QuadratureResult beta_expectation(double a, double b, double ln_beta,
                                  const std::function<double(double, double)>& h,
                                  const BetaExpectationBound& bound, double abs_tol,
                                  double tail_tol) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_expectation: exponents must be positive");

  // Left half: x = exp(-s), s in [ln 2, L_left].
  const double left_const = bound.constant + bound.log_y * std::numbers::ln2;
  const double left_cutoff = choose_cutoff(a, b, ln_beta, bound.log_x, left_const, tail_tol);
  const auto left = [&](double s) {
    const double ln_x = -s;
    const double ln_y = std::log1p(-std::exp(-s));
    const double weight = std::exp(-a * s + (b - 1.0) * ln_y - ln_beta);
    return weight == 0.0 ? 0.0 : weight * h(ln_x, ln_y);
  };

  // Right half: 1 - x = exp(-s).
  const double right_const = bound.constant + bound.log_x * std::numbers::ln2;
  const double right_cutoff = choose_cutoff(b, a, ln_beta, bound.log_y, right_const, tail_tol);
  const auto right = [&](double s) {
    const double ln_y = -s;
    const double ln_x = std::log1p(-std::exp(-s));
    const double weight = std::exp(-b * s + (a - 1.0) * ln_x - ln_beta);
    return weight == 0.0 ? 0.0 : weight * h(ln_x, ln_y);
  };

  const QuadratureResult l =
      integrate_adaptive(left, std::numbers::ln2, left_cutoff, 0.5 * abs_tol);
  const QuadratureResult r =
      integrate_adaptive(right, std::numbers::ln2, right_cutoff, 0.5 * abs_tol);
  return {l.value + r.value, l.error_estimate + r.error_estimate + 2.0 * tail_tol,
          l.intervals + r.intervals};
}

}  // namespace ntic
