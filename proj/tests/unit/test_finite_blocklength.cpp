#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "reference_values.hpp"
#include "urllc/finite_blocklength.hpp"

using namespace urllc;

namespace {
const CodeParams kCode{4096, 0.5};
}

TEST_CASE("code parameters are validated") {
  CHECK_NOTHROW(kCode.validate());
  CHECK_THROWS_AS((CodeParams{1, 0.5}.validate()), DomainError);
  CHECK_THROWS_AS((CodeParams{4096, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((CodeParams{4096, std::nan("")}.validate()), DomainError);
  CHECK_THROWS_AS(achievable_rate(1.0, CodeParams{1, 0.5}, 0.1), DomainError);
}

TEST_CASE("dispersion values") {
  CHECK(dispersion(0.0) == 0.0);
  CHECK(dispersion(1.0) == doctest::Approx(ref::kV_1).epsilon(1e-14));
  CHECK(std::fabs(dispersion(1e9) - kDispersionCap) <= 1e-8);
  CHECK(kDispersionCap == doctest::Approx(1.0 / (std::log(2.0) * std::log(2.0))).epsilon(1e-15));
  CHECK_THROWS_AS(dispersion(-0.1), DomainError);
}

TEST_CASE("dispersion is increasing and below the cap") {
  double prev = dispersion(1e-3 / 1.1);
  for (double rho = 1e-3; rho <= 1e3; rho *= 1.1) {
    const double v = dispersion(rho);
    CHECK(v < kDispersionCap);
    CHECK(v > prev);
    CHECK(v == doctest::Approx(oracle::dispersion(rho)).epsilon(1e-13));
    prev = v;
  }
  CHECK(dispersion(1e300) <= kDispersionCap);
}

TEST_CASE("achievable rate") {
  for (double eps : {1e-3, 0.5, 0.9}) {
    CHECK(achievable_rate(0.0, kCode, eps) == 12.0 / 8192.0);
  }
  CHECK(achievable_rate(1.0, kCode, 0.5) == doctest::Approx(1.0 + 12.0 / 8192.0).epsilon(1e-15));
  CHECK(std::fabs(achievable_rate(1.0, kCode, 1e-3) - 0.941134) <= 1e-5);
  CHECK(achievable_rate(1.0, kCode, 1e-3) == doctest::Approx(ref::kRate_1_4096_1e_3).epsilon(1e-13));
}

TEST_CASE("rate lower bound") {
  CHECK(rate_lower_bound(1.0, kCode, 0.5) == 1.0);
  CHECK(rate_lower_bound(0.0, kCode, 0.5) == 0.0);
  CHECK(std::fabs(rate_lower_bound(1.0, kCode, 1e-3) - 0.930347) <= 1e-5);
  CHECK(rate_lower_bound(1.0, kCode, 1e-3) ==
        doctest::Approx(ref::kRateLb_1_4096_1e_3).epsilon(1e-13));
}

TEST_CASE("rate lower bound never exceeds the achievable rate") {
  for (std::int64_t n : {128, 1024, 4096, 32768}) {
    for (double rho : {1e-3, 0.1, 0.5, 1.0, 4.0, 100.0, 1e6}) {
      for (double eps : {1e-9, 1e-5, 1e-3, 0.1, 0.49}) {
        const CodeParams c{n, 0.5};
        CHECK(rate_lower_bound(rho, c, eps) <= achievable_rate(rho, c, eps));
      }
    }
  }
}

TEST_CASE("snr threshold") {
  CHECK(snr_threshold(kCode, 0.5) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(std::fabs(snr_threshold(kCode, q_func(1.0)) - 0.436486) <= 1e-5);
  CHECK(snr_threshold(kCode, q_func(1.0)) == doctest::Approx(ref::kTau_half_4096_q1).epsilon(1e-12));
  CHECK(std::fabs(snr_threshold(kCode, 1e-5) - 0.511685) <= 1e-4);
  CHECK(snr_threshold(kCode, 1e-5) == doctest::Approx(ref::kTau_half_4096_1e_5).epsilon(1e-12));
  // rate_lower_bound at the threshold gives back R.
  for (double eps : {1e-9, 1e-4, 0.3}) {
    CHECK(rate_lower_bound(snr_threshold(kCode, eps), kCode, eps) ==
          doctest::Approx(kCode.rate).epsilon(1e-12));
  }
}

TEST_CASE("snr threshold decreases in eps") {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const double eps = std::pow(10.0, -12.0 + 11.0 * i / 19.0);
    const double tau = snr_threshold(kCode, eps);
    CHECK(tau < prev);
    prev = tau;
  }
}

TEST_CASE("snr threshold is clamped at zero") {
  const CodeParams low{4096, 0.1};
  CHECK(snr_threshold(low, 1.0 - 1e-6) == 0.0);
  CHECK(snr_threshold(low, 0.5) > 0.0);
}

TEST_CASE("snr threshold overflow is reported") {
  CHECK_THROWS_AS(snr_threshold(CodeParams{2, 1000.0}, 1e-300), OverflowError);
}

TEST_CASE("conditional error probability") {
  CHECK(conditional_error_prob(1e12, kCode).value() <= 1e-300);
  // Capacity exactly covers R minus the log term: Q(0).
  const double rho = std::exp2(kCode.rate - 12.0 / 8192.0) - 1.0;
  CHECK(conditional_error_prob(rho, kCode).value() == doctest::Approx(0.5).epsilon(1e-9));
  const double e1 = conditional_error_prob(1.0, kCode);
  CHECK(e1 > 0.0);
  CHECK(std::fabs(std::log10(e1) - std::log10(ref::kEps_rho1)) <= 1.0);
  CHECK(e1 == doctest::Approx(ref::kEps_rho1).epsilon(1e-10));
  CHECK(conditional_error_prob(0.0, kCode).value() == 1.0);
  CHECK(conditional_error_prob(0.0, CodeParams{4096, 12.0 / 8192.0}).value() == 0.5);
  CHECK(conditional_error_prob(0.0, CodeParams{4096, 1e-4}).value() == 0.0);
  CHECK_THROWS_AS(conditional_error_prob(-1.0, kCode), DomainError);
}

TEST_CASE("conditional error inverts the achievable rate") {
  for (double eps : {1e-5, 1e-3, 0.1}) {
    for (double rho : {0.5, 1.0, 4.0}) {
      const CodeParams c{4096, achievable_rate(rho, kCode, eps)};
      CHECK(conditional_error_prob(rho, c).value() == doctest::Approx(eps).epsilon(1e-9));
    }
  }
}

TEST_CASE("dispersion-cap decoder inverts the threshold") {
  for (double eps : {1e-7, 1e-3, 0.2}) {
    const double tau = snr_threshold(kCode, eps);
    CHECK(conditional_error_prob(tau, kCode, DecoderModel::DispersionCap).value() ==
          doctest::Approx(eps).epsilon(1e-9));
  }
}

TEST_CASE("conditional error matches an independent evaluation") {
  for (std::int64_t n : {128, 4096, 32768}) {
    for (double rho = 0.05; rho < 5.0; rho *= 1.3) {
      const CodeParams c{n, 0.7};
      const double want = oracle::conditional_error(rho, n, 0.7);
      const double got = conditional_error_prob(rho, c);
      if (want > 1e-290) CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
  }
}
