#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library: quadrature comes from Boost.Math, Q^-1 from bisection on
// std::erfc, and the bound objective is rebuilt from its closed form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline double q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

/// Q^-1 by bisection; 200 halvings of [-40, 40] reach the double floor.
inline double q_inv(double p) {
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) > p) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <class F>
double integrate(F f, double a, double b) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-12, &err);
}

/// P(s, x) as the integral of the Gamma(s, 1) density over [0, x].
inline double reg_lower_gamma(int s, double x) {
  const double lgs = std::lgamma(static_cast<double>(s));
  auto pdf = [&](double t) {
    if (t <= 0.0) return s == 1 ? 1.0 : 0.0;
    return std::exp((s - 1) * std::log(t) - t - lgs);
  };
  // Beyond the bulk the remaining mass is negligible next to 1e-15.
  const double cut = std::min(x, s + 60.0 * std::sqrt(static_cast<double>(s)) + 60.0);
  const double peak = s - 1.0;
  if (peak > 0.0 && peak < cut) return integrate(pdf, 0.0, peak) + integrate(pdf, peak, cut);
  return integrate(pdf, 0.0, cut);
}

/// Density of Z_L = chi^2_{2L} / (2L), an Erlang(L, rate L) variable.
inline double erlang_pdf(int bins, double z) {
  if (z <= 0.0) return bins == 1 ? 1.0 : 0.0;
  const double l = bins;
  return std::exp(l * std::log(l) + (l - 1.0) * std::log(z) - l * z - std::lgamma(l));
}

inline double erlang_cdf(int bins, double z) {
  return integrate([&](double t) { return erlang_pdf(bins, t); }, 0.0, z);
}

inline double dispersion(double rho) {
  const double a = 1.0 + rho;
  const double log2e = 1.0 / std::numbers::ln2;
  return rho * (2.0 + rho) / (a * a) * log2e * log2e;
}

/// Decoding error at MRC-SNR rho, from the normal approximation solved for eps.
inline double conditional_error(double rho, std::int64_t n, double rate) {
  const double nd = static_cast<double>(n);
  const double v = dispersion(rho);
  const double margin = std::log2(1.0 + rho) - rate + std::log2(nd) / (2.0 * nd);
  if (v == 0.0) return margin > 0.0 ? 0.0 : (margin < 0.0 ? 1.0 : 0.5);
  return q(std::sqrt(nd / v) * margin);
}

/// E[eps(beta Z_L)] by quadrature over the Erlang density. The integrand
/// switches from about 1 to about 0 near the capacity threshold, so the
/// range is split there.
inline double per_quadrature(int bins, double beta, std::int64_t n, double rate) {
  auto f = [&](double z) { return conditional_error(beta * z, n, rate) * erlang_pdf(bins, z); };
  const double z0 = std::expm1(std::numbers::ln2 * rate) / beta;
  const double hi = 1.0 + 80.0 / std::sqrt(static_cast<double>(bins)) + 40.0;
  double total = 0.0;
  const double cuts[] = {0.0, 0.5 * z0, 0.9 * z0, z0, 1.1 * z0, 1.5 * z0, 3.0 * z0, hi};
  for (int i = 0; i + 1 < 8; ++i) {
    if (cuts[i + 1] > cuts[i]) total += integrate(f, cuts[i], cuts[i + 1]);
  }
  return total;
}

inline double correction_term(int bins) {
  return bins * std::exp(-1.0) * std::pow(factorial(bins), -1.0 / bins);
}

enum class Tail { Corrected, Chernoff };

/// eps + (1 - eps) * bound(tau(eps) / beta), pinned to 1 where the bound
/// expression has passed its maximum.
inline double objective(double eps, std::int64_t n, double rate, int bins, double beta, Tail tail) {
  const double vbar = 1.0 / (std::numbers::ln2 * std::numbers::ln2);
  const double tau = std::pow(2.0, rate + std::sqrt(vbar / n) * q_inv(eps)) - 1.0;
  if (tau <= 0.0) return eps;
  const double c = tail == Tail::Corrected ? correction_term(bins) : 1.0;
  const double x = c * tau / beta;
  if (x >= 1.0) return 1.0;
  const double outage = std::pow(x * std::exp(1.0 - x), bins);
  return std::min(1.0, eps + (1.0 - eps) * outage);
}

/// Kolmogorov-Smirnov 1% critical value for large samples.
inline double ks_critical_1pct(std::size_t samples) { return 1.6276 / std::sqrt(static_cast<double>(samples)); }

}  // namespace oracle
