#pragma once

#include <cmath>

namespace ntic::detail {

// Neumaier compensated sum. Order-dependent, so callers feed terms in a
// fixed order to keep results bit-stable.
class CompensatedSum {
 public:
  void add(double term) noexcept {
    const double next = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - next) + term;
    } else {
      compensation_ += (term - next) + sum_;
    }
    sum_ = next;
  }
  CompensatedSum& operator+=(double term) noexcept {
    add(term);
    return *this;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ntic::detail
