#pragma once

// Closed-form scalar special functions underlying every bound in the library:
// the Bernoulli log-Laplace map and its inverse, the three-point-distribution
// variant, the tilted map used by local bounds, the convex change-of-variable
// map used by Gibbs-comparison bounds, the k=1 shadow-sample coefficient, and
// log-binomial tails.
//
// Domain violations throw std::domain_error / std::invalid_argument. Where a
// formula can leave its domain for legal inputs (a log argument crossing zero)
// the function returns NaN and the caller treats the bound as vacuous.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pacbayes/optimize.hpp"

namespace pacbayes {

// Dimensionless exponent of the kernel family, typically lambda/N or gamma/N.
// All operations extend continuously through a = 0.
struct ExpParam {
  double a;
  explicit ExpParam(double value) : a(value) {
    if (!std::isfinite(value)) throw std::invalid_argument("ExpParam: non-finite exponent");
  }
};

namespace detail {
// Threshold below which the a->0 continuous extensions switch to 4th-order
// series; avoids the 1 - exp(-a) cancellation.
inline constexpr double kSmallA = 1e-6;

inline double om_exp_neg(double a) { return -std::expm1(-a); }  // 1 - e^{-a}

// (1 - e^{-a})/a via series for small |a|.
inline double om_exp_neg_over_a(double a) {
  if (std::abs(a) < kSmallA)
    return 1.0 - a / 2.0 + a * a / 6.0 - a * a * a / 24.0;
  return om_exp_neg(a) / a;
}

// -log(1-x)/x, series-expanded near 0.
inline double neg_log1m_over(double x) {
  if (std::abs(x) < kSmallA)
    return 1.0 + x / 2.0 + x * x / 3.0 + x * x * x / 4.0;
  return -std::log1p(-x) / x;
}
}  // namespace detail

// Phi_a(p) = -a^{-1} log(1 - p(1 - e^{-a})); identity at a = 0. Increasing
// bijection of [0,1]; convex for a > 0, concave for a < 0.
inline double phi(ExpParam ap, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("phi: p outside [0,1]");
  const double a = ap.a;
  if (a == 0.0) return p;
  const double x = p * detail::om_exp_neg(a);
  // Phi = p * ((1-e^{-a})/a) * (-log(1-x)/x)
  return p * detail::om_exp_neg_over_a(a) * detail::neg_log1m_over(x);
}

// Phi_a^{-1}(q) = (1 - e^{-aq})/(1 - e^{-a}); defined for all real q (the
// closed form extends the inverse beyond [0,1] and callers rely on that).
inline double phi_inv(ExpParam ap, double q) {
  if (!std::isfinite(q)) throw std::domain_error("phi_inv: non-finite q");
  const double a = ap.a;
  if (a == 0.0) return q;
  if (std::abs(a) < detail::kSmallA) {
    const double aq = a * q;
    const double num = q * (1.0 - aq / 2.0 + aq * aq / 6.0 - aq * aq * aq / 24.0);
    const double den = 1.0 - a / 2.0 + a * a / 6.0 - a * a * a / 24.0;
    return num / den;
  }
  return std::expm1(-a * q) / std::expm1(-a);
}

// Psi_a(p,m) = -a^{-1} log(1 - sinh(a)(p - m tanh(a/2))): the log-Laplace map
// of a three-point {-1,0,1} distribution with mean p and second moment m.
// Returns NaN when the log argument is nonpositive (bound undefined).
inline double psi(ExpParam ap, double p, double m) {
  if (!std::isfinite(p) || !std::isfinite(m)) throw std::domain_error("psi: non-finite argument");
  const double a = ap.a;
  const double bracket = p - m * std::tanh(a / 2.0);
  if (a == 0.0) return p;
  const double x = std::sinh(a) * bracket;
  if (x >= 1.0) return quiet_nan();
  if (std::abs(a) < detail::kSmallA) {
    const double sinh_over_a = 1.0 + a * a / 6.0 + a * a * a * a / 120.0;
    return sinh_over_a * bracket * detail::neg_log1m_over(x);
  }
  return -std::log1p(-x) / a;
}

// PhiTilde_{a,b}(p) = (1-b)^{-1} [Phi_a(p) - b p], a > 0, 0 <= b < 1.
// Monotone bijection of [0,1] when b <= a^{-1}(1 - e^{-a}).
inline double phi_tilde(ExpParam ap, double b, double p) {
  if (!(ap.a > 0.0)) throw std::domain_error("phi_tilde: requires a > 0");
  if (!(b >= 0.0 && b < 1.0)) throw std::domain_error("phi_tilde: requires 0 <= b < 1");
  return (phi(ap, p) - b * p) / (1.0 - b);
}

// Inverse of PhiTilde_{a,b} by bracketed bisection + Newton. Requires the
// monotone regime b < a^{-1}(1-e^{-a}); accepts q >= 0 (values above
// PhiTilde(1) = 1 resolve to p > 1, which callers report as vacuous).
inline double phi_tilde_inv(ExpParam ap, double b, double q) {
  if (!(ap.a > 0.0)) throw std::domain_error("phi_tilde_inv: requires a > 0");
  if (!(b >= 0.0 && b < 1.0)) throw std::domain_error("phi_tilde_inv: requires 0 <= b < 1");
  const double slope_cap = detail::om_exp_neg_over_a(ap.a);
  if (!(b < slope_cap)) throw std::domain_error("phi_tilde_inv: b >= a^{-1}(1-e^{-a}), map not monotone");
  if (!(q >= 0.0)) throw std::domain_error("phi_tilde_inv: q < 0");
  const double a = ap.a;
  const double u = detail::om_exp_neg(a);
  const double p_max = (1.0 - 1e-14) / u;  // log argument stays positive
  auto f = [&](double p) { return (-std::log1p(-p * u) / a - b * p) / (1.0 - b); };
  auto df = [&](double p) { return (u / (a * (1.0 - p * u)) - b) / (1.0 - b); };
  if (q >= f(p_max)) return p_max;
  return solve_increasing(f, q, 0.0, p_max, df);
}

// F_{gamma,alpha}(x) = -N log(1 - tanh(gamma/N) x) - alpha x, defined for
// tanh(gamma/N) x < 1. Convex, with F(x) >= (N tanh(gamma/N) - alpha) x.
inline double f_gamma_alpha(double gamma, double alpha, double n, double x) {
  if (!(n > 0.0)) throw std::domain_error("f_gamma_alpha: N must be positive");
  const double t = std::tanh(gamma / n);
  if (!(t * x < 1.0)) throw std::domain_error("f_gamma_alpha: tanh(gamma/N)*x >= 1");
  return -n * std::log1p(-t * x) - alpha * x;
}

// Inverse of F_{gamma,alpha} on [0, tanh(gamma/N)^{-1}); requires the strictly
// increasing regime alpha < N tanh(gamma/N) and y >= F(0) = 0.
inline double f_gamma_alpha_inv(double gamma, double alpha, double n, double y) {
  if (!(n > 0.0)) throw std::domain_error("f_gamma_alpha_inv: N must be positive");
  const double t = std::tanh(gamma / n);
  if (!(alpha < n * t)) throw std::domain_error("f_gamma_alpha_inv: alpha >= N tanh(gamma/N)");
  if (y < 0.0) throw std::domain_error("f_gamma_alpha_inv: y below F(0) = 0");
  if (y == 0.0) return 0.0;
  const double hi = (1.0 - 1e-14) / t;
  auto f = [&](double x) { return -n * std::log1p(-t * x) - alpha * x; };
  auto df = [&](double x) { return n * t / (1.0 - t * x) - alpha; };
  if (y >= f(hi)) return hi;
  return solve_increasing(f, y, 0.0, hi, df);
}

// A(lambda) = (2N/lambda) log cosh(lambda/2N): the shadow-sample variance
// coefficient of the k=1 bounds. 0 < A < min(1, lambda/(4N)), increasing.
inline double a_of_lambda(double lambda, double n) {
  if (!(lambda > 0.0)) throw std::domain_error("a_of_lambda: lambda must be positive");
  if (!(n > 0.0)) throw std::domain_error("a_of_lambda: N must be positive");
  const double x = lambda / (2.0 * n);
  double logcosh;
  if (x < 1e-4) {
    const double x2 = x * x;
    logcosh = x2 / 2.0 - x2 * x2 / 12.0 + x2 * x2 * x2 / 45.0;
  } else if (x > 20.0) {
    logcosh = x - std::log(2.0) + std::log1p(std::exp(-2.0 * x));
  } else {
    logcosh = std::log(std::cosh(x));
  }
  return logcosh / x;
}

// log sum_{k<=h} C(n,k), accumulated in log space.
inline double binom_tail(std::int64_t n, std::int64_t h) {
  if (n < 0 || h < 0 || h > n) throw std::domain_error("binom_tail: requires 0 <= h <= n");
  double acc = kNegInf;
  for (std::int64_t k = 0; k <= h; ++k) {
    const double lc = std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
                      std::lgamma(double(n - k) + 1.0);
    acc = log_add_exp(acc, lc);
  }
  return acc;
}

// h (log(n/h) + 1) >= binom_tail(n,h); the limit at h = 0 is 0.
inline double entropy_bound(std::int64_t n, std::int64_t h) {
  if (n < 0 || h < 0 || h > n) throw std::domain_error("entropy_bound: requires 0 <= h <= n");
  if (h == 0) return 0.0;
  return double(h) * (std::log(double(n) / double(h)) + 1.0);
}

}  // namespace pacbayes
