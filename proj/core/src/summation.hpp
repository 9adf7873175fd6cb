#pragma once

#include <cmath>

namespace gaborlab::detail {

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

inline double abs_pow(double magnitude, double p) {
  if (p == 2.0) return magnitude * magnitude;
  if (p == 4.0) {
    const double sq = magnitude * magnitude;
    return sq * sq;
  }
  return std::pow(magnitude, p);
}

}  // namespace gaborlab::detail
