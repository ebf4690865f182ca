#pragma once

// Non-localized empirical, optimized and deviation bounds. Each evaluator
// returns raw (unclipped) values; report formatting clips to [0,1] and sets
// the vacuous flag. Confidence levels enter only through -log(eps) and must
// lie in (0,1).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pacbayes/bound_kernels.hpp"
#include "pacbayes/finite_model.hpp"
#include "pacbayes/optimize.hpp"

namespace pacbayes {

struct ScalarBoundQuery {
  std::int64_t n = 0;        // sample size
  double q = 0.0;            // empirical risk in [0,1]
  double d = 0.0;            // complexity in nats (KL or a bound on it)
  double eps = 0.0;          // confidence level in (0,1)
  std::vector<double> lambda_grid;  // optional explicit grid
  double alpha = 1.1;        // grid ratio for uniform-in-lambda bounds

  void validate(bool needs_eps = true) const {
    if (n < 1) throw std::domain_error("query: N must be >= 1");
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("query: q outside [0,1]");
    if (!(d >= 0.0)) throw std::domain_error("query: d must be >= 0");
    if (needs_eps && !(eps > 0.0 && eps < 1.0))
      throw std::domain_error("query: eps must lie in (0,1)");
    if (!(alpha > 1.0)) throw std::domain_error("query: alpha must be > 1");
  }
};

inline void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
}

struct UnbiasedBound {
  double tight;   // (1 - exp(-(lambda q + d)/N)) / (1 - e^{-lambda/N})
  double linear;  // lambda/(N(1-e^{-lambda/N})) (q + d/lambda)
};

// In-expectation bound at a fixed exponential parameter; d is the KL term
// alone, no confidence level enters.
inline UnbiasedBound unbiased_bound(const ScalarBoundQuery& query, double lambda) {
  query.validate(false);
  if (!(lambda > 0.0)) throw std::domain_error("unbiased_bound: lambda must be positive");
  const double n = double(query.n);
  const double den = -std::expm1(-lambda / n);
  return {-std::expm1(-(lambda * query.q + query.d) / n) / den,
          lambda / (n * den) * (query.q + query.d / lambda)};
}

struct OptimizedBound {
  double value;
  double lambda_star;
};

// Closed-form optimization of the unbiased bound at the near-optimal
// lambda = sqrt(2 N d / (q(1-q))). Falls back to grid minimization of the
// tight form when q is 0 or 1.
inline OptimizedBound optimized_unbiased_bound(const ScalarBoundQuery& query) {
  query.validate(false);
  const double n = double(query.n);
  if (query.d == 0.0) return {query.q, 0.0};
  if (query.q <= 0.0 || query.q >= 1.0) {
    MinResult r = minimize_log_scale(
        [&](double lam) { return unbiased_bound(query, lam).tight; }, 1.0, 10.0 * n);
    return {r.value, r.x};
  }
  const double v = query.q * (1.0 - query.q);
  const double lam = std::sqrt(2.0 * n * query.d / v);
  const double num = -std::expm1(-std::sqrt(2.0 * query.d * query.q / (n * (1.0 - query.q))) - query.d / n);
  const double den = -std::expm1(-std::sqrt(2.0 * query.d / (n * v)));
  return {num / den, lam};
}

// Vapnik-style square-root form: B(q,d) when it stays below 1/2, otherwise
// the q + sqrt(d/2N) branch.
inline double sqrt_bound(const ScalarBoundQuery& query) {
  query.validate(false);
  const double n = double(query.n);
  const double q = query.q, d = query.d;
  const double b = (q + d / n + std::sqrt(2.0 * d * q * (1.0 - q) / n + d * d / (n * n))) /
                   (1.0 + 2.0 * d / n);
  return b <= 0.5 ? b : q + std::sqrt(d / (2.0 * n));
}

struct DeviationBound {
  double tight;   // Phi^{-1}_{lambda/N}(q + (kl - log eps)/lambda)
  double linear;  // first-order coefficient form
};

// High-probability bound at fixed lambda; kl is the posterior divergence.
inline DeviationBound deviation_bound(const ScalarBoundQuery& query, double kl_val, double lambda) {
  query.validate();
  if (!(lambda > 0.0)) throw std::domain_error("deviation_bound: lambda must be positive");
  if (!(kl_val >= 0.0)) throw std::domain_error("deviation_bound: kl must be >= 0");
  const double n = double(query.n);
  const double dd = kl_val - std::log(query.eps);
  const double arg = query.q + dd / lambda;
  const double tight = phi_inv(ExpParam(lambda / n), arg);
  const double linear = lambda / (n * -std::expm1(-lambda / n)) * arg;
  return {tight, linear};
}

// Minimize the deviation bound over lambda in [1, 10N]; the paper's optima
// all sit well inside this range.
inline OptimizedBound optimized_deviation_bound(const ScalarBoundQuery& query, double kl_val) {
  query.validate();
  MinResult r = minimize_log_scale(
      [&](double lam) { return deviation_bound(query, kl_val, lam).tight; },
      1.0, 10.0 * double(query.n));
  return {r.value, r.x};
}

struct UniformDeviation {
  double value;
  int k_star;  // grid index: lambda = alpha^k
};

// Deviation bound made uniform in lambda via the weighted grid
// {alpha^k : k in N}, paying log((k+1)(k+2)) per atom. For q = 0 the direct
// zero-error branch 1 - exp(-(kl - log eps)/N) applies.
inline UniformDeviation uniform_deviation_bound(const ScalarBoundQuery& query, double kl_val) {
  query.validate();
  if (!(kl_val >= 0.0)) throw std::domain_error("uniform_deviation_bound: kl must be >= 0");
  const double n = double(query.n);
  const double d_eps = kl_val - std::log(query.eps);
  if (query.q == 0.0) return {-std::expm1(-d_eps / n), 0};
  double best = kPosInf;
  int best_k = 0;
  for (int k = 0;; ++k) {
    const double lam = std::pow(query.alpha, k);
    if (lam > 10.0 * n) break;
    const double pen = d_eps + std::log(double(k + 1) * double(k + 2));
    const double v = -std::expm1(-lam * query.q / n - pen / n) / -std::expm1(-lam / n);
    if (v < best) { best = v; best_k = k; }
  }
  return {best, best_k};
}

// Bound driven by the empirical dimension of a finite model: the prior mass
// near the empirical minimizers replaces an explicit KL budget. `rho`
// defaults to the Gibbs posterior at the same lambda (KL term zero).
inline double empirical_dim_deviation(const FiniteHypothesisClass& model, double eps, double lambda,
                                      const PosteriorWeights* rho = nullptr) {
  check_eps(eps);
  if (!(lambda > 0.0)) throw std::domain_error("empirical_dim_deviation: lambda must be positive");
  const double n = double(model.n_points());
  const double de = model.empirical_dimension();
  const double dim_term = de > 0.0 ? de / lambda * std::log(std::exp(1.0) * lambda / de) : 0.0;
  double kl_term = 0.0;
  if (rho) kl_term = kl(*rho, model.gibbs(lambda));
  const double arg = model.min_support_risk() + dim_term + (kl_term - std::log(eps)) / lambda;
  return phi_inv(ExpParam(lambda / n), arg);
}

}  // namespace pacbayes
