#include "urllc/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace urllc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr std::array<double, 21> make_factorials() {
  std::array<double, 21> f{};
  f[0] = 1.0;
  for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] * static_cast<double>(k);
  return f;
}
// Every k! for k <= 20 is exactly representable in a double.
constexpr auto kFactorials = make_factorials();

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Acklam's rational approximation of the lower-tail normal quantile,
// relative error about 1.15e-9 over (0, 1).
double acklam_lower_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Series for P(s, x), valid and fast for x < s + 1. Returns ln of the sum
// part so the caller can combine it with the log prefactor.
double log_gamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= x / (s + k);
    sum += term;
    if (term < sum * kEps) break;
  }
  return std::log(sum);
}

// Modified Lentz continued fraction for Q(s, x) without the prefactor,
// valid for x >= s + 1.
double gamma_continued_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

void check_gamma_args(std::int64_t s, double x) {
  if (s < 1) throw DomainError("reg_lower_gamma: shape must be >= 1, got " + std::to_string(s));
  if (!(x >= 0.0)) throw DomainError("reg_lower_gamma: x must be >= 0");
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability out of [0,1]: " + std::to_string(value));
  }
}

Probability Probability::clamped(double value) {
  if (std::isnan(value)) throw DomainError("probability is NaN");
  return Probability(value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value));
}

Probability q_func(double x) {
  if (!std::isfinite(x)) throw DomainError("q_func: argument must be finite");
  return Probability::clamped(0.5 * std::erfc(x * std::numbers::sqrt2 * 0.5));
}

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("q_inv: p must lie in (0,1)");
  if (p > 0.5) return -q_inv(1.0 - p);
  if (p == 0.5) return 0.0;

  double x = -acklam_lower_quantile(p);
  for (int step = 0; step < 2; ++step) {
    const double pdf = standard_normal_pdf(x);
    if (pdf <= 0.0) break;
    x += (q_func(x).value() - p) / pdf;
  }
  return x;
}

double log_reg_lower_gamma(std::int64_t s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (std::isinf(x)) return 0.0;

  const double sd = static_cast<double>(s);
  const double log_prefactor = sd * std::log(x) - x - log_factorial(s - 1);
  if (x < sd + 1.0) return log_prefactor + log_gamma_series(sd, x);
  const double upper = std::exp(log_prefactor) * gamma_continued_fraction(sd, x);
  return std::log1p(-upper);
}

Probability reg_lower_gamma(std::int64_t s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) return Probability(0.0);
  return Probability::clamped(std::exp(log_reg_lower_gamma(s, x)));
}

double log_factorial(std::int64_t k) {
  if (k < 0) throw DomainError("log_factorial: k must be >= 0");
  if (k < static_cast<std::int64_t>(kFactorials.size())) {
    return std::log(kFactorials[static_cast<std::size_t>(k)]);
  }
  return std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace urllc
