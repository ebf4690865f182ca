#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pacbayes/bound_kernels.hpp"

using namespace pacbayes;

namespace {
// direct long-double evaluation of the closed forms, used as the frozen oracle
long double phi_direct(long double a, long double p) {
  if (a == 0.0L) return p;
  return -std::log(1.0L - p * (1.0L - std::exp(-a))) / a;
}
}  // namespace

TEST_CASE("phi fixed points and paper value") {
  for (double a : {-3.0, -0.5, 0.0, 0.7, 5.0}) {
    CHECK(phi(ExpParam(a), 0.0) == 0.0);
    CHECK(phi(ExpParam(a), 1.0) == Catch::Approx(1.0).margin(1e-14));
  }
  // round trip of the running numeric example
  CHECK(std::abs(phi(ExpParam(0.234), 0.24012) - 0.21968) <= 1e-4);
  CHECK(phi(ExpParam(0.234), 0.24012) ==
        Catch::Approx(double(phi_direct(0.234L, 0.24012L))).epsilon(1e-13));
  CHECK_THROWS_AS(phi(ExpParam(0.5), 1.2), std::domain_error);
  CHECK_THROWS_AS(ExpParam(std::nan("")), std::invalid_argument);
}

TEST_CASE("phi_inv closed form, extension, paper value") {
  CHECK(std::abs(phi_inv(ExpParam(0.234), 0.2 + std::log(100.0) / 234.0) - 0.2402) <= 5e-4);
  for (double a : {-2.0, 0.3, 4.0}) CHECK(phi_inv(ExpParam(a), 0.0) == 0.0);
  // out-of-range extension: the closed form keeps working above 1
  const double ext = phi_inv(ExpParam(0.5), 1.2);
  CHECK(ext == Catch::Approx(std::expm1(-0.5 * 1.2) / std::expm1(-0.5)));
  CHECK(ext > 1.0);
}

TEST_CASE("phi/phi_inv round trip to 1e-12") {
  for (double a = -5.0; a <= 5.0; a += 0.37) {
    if (a == 0.0) continue;
    for (double q = 0.0; q <= 1.0; q += 0.05) {
      const double p = phi_inv(ExpParam(a), q);
      CHECK(std::abs(phi(ExpParam(a), p) - q) <= 1e-12);
    }
  }
  // tiny-a branch continuity
  for (double a : {1e-7, -1e-7, 1e-9}) {
    const double p = phi_inv(ExpParam(a), 0.3);
    CHECK(std::abs(phi(ExpParam(a), p) - 0.3) <= 1e-12);
    CHECK(p == Catch::Approx(0.3).margin(1e-6));
  }
}

TEST_CASE("phi convex for a > 0, concave for a < 0") {
  for (double a : {0.8, 3.0, -0.8, -3.0}) {
    const double sign = a > 0 ? 1.0 : -1.0;
    for (double p = 0.05; p <= 0.9; p += 0.05) {
      const double h = 1e-3;
      const double second = phi(ExpParam(a), p - h) - 2.0 * phi(ExpParam(a), p) +
                            phi(ExpParam(a), p + h);
      CHECK(sign * second >= -1e-12);
    }
  }
}

TEST_CASE("psi: zeros, vanishing bracket, closed form, three-point oracle") {
  CHECK(psi(ExpParam(0.7), 0.0, 0.0) == Catch::Approx(0.0).margin(1e-15));
  const double a = 0.9;
  const double m = 0.1 / std::tanh(a / 2.0);  // bracket vanishes
  CHECK(psi(ExpParam(a), 0.1, m) == Catch::Approx(0.0).margin(1e-14));
  CHECK(psi(ExpParam(0.5), 0.1, 0.3) == Catch::Approx(0.0278363013).epsilon(1e-8));

  // Psi is the log-Laplace of the three-point distribution with masses
  // ((m+p)/2, 1-m, (m-p)/2) on {-1, 0, +1}: direct enumeration oracle.
  for (double aa : {0.2, 0.7, 1.5, -0.6}) {
    const double p = 0.1, mm = 0.4;
    const double direct =
        -std::log((mm - p) / 2.0 * std::exp(aa) + (1.0 - mm) + (mm + p) / 2.0 * std::exp(-aa)) / aa;
    CHECK(psi(ExpParam(aa), p, mm) == Catch::Approx(direct).epsilon(1e-12));
  }
  // bound-undefined signal
  CHECK(std::isnan(psi(ExpParam(5.0), 0.99, 0.0)));
}

TEST_CASE("phi_tilde degeneracies and inverse round trip") {
  for (double p = 0.0; p <= 1.0; p += 0.1)
    CHECK(phi_tilde(ExpParam(0.6), 0.0, p) == Catch::Approx(phi(ExpParam(0.6), p)).margin(1e-15));
  CHECK(phi_tilde(ExpParam(0.6), 0.3, 0.0) == 0.0);
  CHECK_THROWS_AS(phi_tilde(ExpParam(0.6), 1.0, 0.5), std::domain_error);
  const double q = phi_tilde(ExpParam(0.5), 0.2, 0.3);
  CHECK(std::abs(phi_tilde_inv(ExpParam(0.5), 0.2, q) - 0.3) <= 1e-10);
  for (double p = 0.01; p < 1.0; p += 0.07) {
    const double qq = phi_tilde(ExpParam(1.2), 0.35, p);
    CHECK(std::abs(phi_tilde_inv(ExpParam(1.2), 0.35, qq) - p) <= 1e-10);
  }
}

TEST_CASE("f_gamma_alpha forward, inverse, lower bound") {
  CHECK(f_gamma_alpha(200.0, 50.0, 1000.0, 0.0) == 0.0);
  const double y = f_gamma_alpha(200.0, 50.0, 1000.0, 0.1);
  CHECK(std::abs(f_gamma_alpha_inv(200.0, 50.0, 1000.0, y) - 0.1) <= 1e-10);
  const double t = std::tanh(200.0 / 1000.0);
  for (double x = 0.0; x < 0.9 / t; x += 0.05 / t) {
    CHECK(f_gamma_alpha(200.0, 50.0, 1000.0, x) >= (1000.0 * t - 50.0) * x - 1e-10);
  }
  CHECK_THROWS_AS(f_gamma_alpha_inv(200.0, 50.0, 1000.0, -1.0), std::domain_error);
}

TEST_CASE("a_of_lambda values and inequalities") {
  const double n = 1000.0;
  CHECK(a_of_lambda(1e-9, n) == Catch::Approx(0.0).margin(1e-12));
  CHECK(a_of_lambda(2.0 * n, n) == Catch::Approx(std::log(std::cosh(1.0))).epsilon(1e-12));
  double prev = 0.0;
  for (double lam = 1.0; lam <= 50.0 * n; lam *= 1.5) {
    const double a = a_of_lambda(lam, n);
    CHECK(a <= lam / (4.0 * n) + 1e-12);
    CHECK(a > prev);
    prev = a;
  }
  // asymptote: |A(lambda) - 1| approaches (2N/lambda) log 2
  const double lam = 100.0 * n;
  CHECK(std::abs(a_of_lambda(lam, n) - 1.0) ==
        Catch::Approx(2.0 * n / lam * std::log(2.0)).epsilon(0.01));
}

TEST_CASE("binom_tail and entropy bound") {
  for (std::int64_t n : {1, 5, 17}) CHECK(binom_tail(n, n) == Catch::Approx(n * std::log(2.0)));
  CHECK(binom_tail(10, 3) == Catch::Approx(std::log(176.0)).epsilon(1e-12));  // 1+10+45+120
  CHECK(binom_tail(10, 0) == 0.0);
  CHECK_THROWS_AS(binom_tail(5, 6), std::domain_error);
  for (std::int64_t n = 1; n <= 50; ++n)
    for (std::int64_t h = 0; h <= n; ++h)
      CHECK(binom_tail(n, h) <= entropy_bound(n, h) + 1e-9);
}
