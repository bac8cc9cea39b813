#pragma once

#include <cstdint>

#include "urllc/errors.hpp"

namespace urllc {

/// A value in [0, 1]. Construction checks the range; conversion back to
/// double is implicit so probabilities compose with ordinary arithmetic.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

  /// Clamps into [0, 1] instead of throwing; NaN is still rejected.
  static Probability clamped(double value);

 private:
  double value_ = 0.0;
};

/// Standard Gaussian upper tail, Q(x) = P(N(0,1) > x).
Probability q_func(double x);

/// Inverse of q_func on (0, 1).
double q_inv(double p);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / (s-1)! for
/// integer shape s >= 1.
Probability reg_lower_gamma(std::int64_t s, double x);

/// ln P(s, x); stays finite where P(s, x) itself underflows.
double log_reg_lower_gamma(std::int64_t s, double x);

/// ln(k!).
double log_factorial(std::int64_t k);

}  // namespace urllc
