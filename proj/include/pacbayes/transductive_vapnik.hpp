#pragma once

// Shadow-sample (transductive) bounds and the inductive bounds derived from
// them, with VC / compression-scheme complexity terms and the classical
// Vapnik bound for comparison. All optimizations over the exponential
// parameter use a geometric bracket capped at 10N (the published optima
// exceed N, so the cap must too) with a golden-section polish.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacbayes/bound_kernels.hpp"
#include "pacbayes/nonlocal_bounds.hpp"
#include "pacbayes/optimize.hpp"

namespace pacbayes {

struct VapnikQuery {
  std::int64_t n = 0;     // training sample size
  double r1 = 0.0;        // observed empirical risk
  std::int64_t h = 0;     // VC dimension or compression size
  double eps = 0.0;       // confidence level in (0,1)
  std::vector<int> k_grid;     // shadow multipliers; default 1..64
  double alpha = 1.1;          // ratio of the weighted lambda grid
  std::vector<double> eta_seq; // decreasing; default (1/log(10N), 1/(10N))
  double slack_override = -1.0;  // < 0: use the registry value for N

  void validate() const {
    if (n < 1) throw std::domain_error("query: N must be >= 1");
    if (!(r1 >= 0.0 && r1 <= 1.0)) throw std::domain_error("query: r1 outside [0,1]");
    if (h < 0) throw std::domain_error("query: h must be >= 0");
    check_eps(eps);
    if (!(alpha > 1.0)) throw std::domain_error("query: alpha must be > 1");
  }
  std::vector<int> ks() const {
    if (!k_grid.empty()) return k_grid;
    std::vector<int> v(64);
    for (int i = 0; i < 64; ++i) v[i] = i + 1;
    return v;
  }
  double eta_last() const {
    return eta_seq.empty() ? 1.0 / (10.0 * double(n)) : eta_seq.back();
  }
  double slack() const;  // defined after dpp_slack
};

enum class ComplexityKind { Vc, Compression, User };

struct ComplexityTerm {
  double value;  // nats
  ComplexityKind kind;
};

// h log(e(k+1)N/h) - log eps + extra_logs; the shared complexity budget of
// VC classes and compression schemes on the extended sample.
inline ComplexityTerm complexity(ComplexityKind kind, std::int64_t h, std::int64_t n, int k,
                                 double eps, double extra_logs = 0.0) {
  if (h < 0 || n < 1 || k < 0) throw std::domain_error("complexity: bad h/N/k");
  if (h > (std::int64_t(k) + 1) * n) throw std::domain_error("complexity: h exceeds (k+1)N");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("complexity: eps must lie in (0,1]");
  double v = -std::log(eps) + extra_logs;
  if (h > 0) v += double(h) * std::log(std::exp(1.0) * double(k + 1) * double(n) / double(h));
  return {v, kind};
}

// Registry of the eta-sequence slack absorbed into d''_k = d'_k + slack(N),
// valid for the packaged defaults up to N = 1e9.
inline double dpp_slack(std::int64_t n) {
  if (n <= 1000) return 3.7;
  if (n <= 1000000) return 4.4;
  if (n <= 1000000000) return 4.7;
  throw std::domain_error("dpp_slack: packaged eta defaults cover N <= 1e9 only");
}

inline double VapnikQuery::slack() const {
  return slack_override >= 0.0 ? slack_override : dpp_slack(n);
}

struct TransductiveBound {
  double value;
  double lambda_star;
};

// Shadow-sample error bound at shadow multiplier k:
// (k+1)/k inf_l (1 - exp(-l r1/N - d/N))/(1 - e^{-l/N}) - r1/k.
inline TransductiveBound transductive_bound(const VapnikQuery& query, int k) {
  query.validate();
  if (k < 1) throw std::domain_error("transductive_bound: k must be >= 1");
  const double n = double(query.n);
  const double d = complexity(ComplexityKind::Vc, query.h, query.n, k, query.eps).value;
  auto f = [&](double lam) {
    return double(k + 1) / k * -std::expm1(-lam * query.r1 / n - d / n) / -std::expm1(-lam / n) -
           query.r1 / k;
  };
  MinResult r = minimize_log_scale(f, 1.0, 10.0 * n);
  return {r.value, r.x};
}

// k = 1 refinement using the three-valued row averages:
// 2 inf_l (r1 + d/l)/(1 - A(l)) - r1, excluding lambdas with A(l) >= 1.
inline TransductiveBound transductive_bound_k1(const VapnikQuery& query) {
  query.validate();
  const double n = double(query.n);
  const double d = complexity(ComplexityKind::Vc, query.h, query.n, 1, query.eps).value;
  auto f = [&](double lam) {
    const double den = 1.0 - a_of_lambda(lam, n);
    if (!(den > 0.0)) return kPosInf;
    return 2.0 * (query.r1 + d / lam) / den - query.r1;
  };
  MinResult r = minimize_log_scale(f, 1.0, 10.0 * n);
  return {r.value, r.x};
}

// k = 1 under a fully exchangeable sample law: the bound solved in r2 with
// the empirical variance r1(1 - r1) entering through A(lambda).
inline TransductiveBound exchangeable_bound(const VapnikQuery& query, bool assume_exchangeable = true) {
  query.validate();
  if (!assume_exchangeable)
    throw std::invalid_argument("exchangeable_bound: requires the exchangeable-sample assumption");
  const double n = double(query.n);
  const double d = complexity(ComplexityKind::Vc, query.h, query.n, 1, query.eps).value;
  auto f = [&](double lam) {
    const double a = a_of_lambda(lam, n);
    const double den = 1.0 - a * (1.0 - 2.0 * query.r1);
    if (!(den > 0.0)) return kPosInf;
    return (query.r1 * (1.0 + a) + 2.0 * d / lam) / den;
  };
  MinResult r = minimize_log_scale(f, 1.0, 10.0 * n);
  return {r.value, r.x};
}

struct InductiveBound {
  double value;
  int k_star;
  double lambda_star;
};

// Inductive bound through a fictitious shadow sample, optimized over the
// shadow multiplier k and the (continuous) exponential parameter:
// (k+1)/k Phi^{-1}_{l/N}(r1 + etaJ(1-r1) + (d''_k + log k(k+1))/l) - r1/k.
inline InductiveBound inductive_bound(const VapnikQuery& query) {
  query.validate();
  const double n = double(query.n);
  const double eta_j = query.eta_last();
  const double slack = query.slack();
  InductiveBound best{kPosInf, 0, 0.0};
  for (int k : query.ks()) {
    const double dpp = complexity(ComplexityKind::Vc, query.h, query.n, k, query.eps).value + slack;
    const double pen = dpp + std::log(double(k) * double(k + 1));
    auto f = [&](double lam) {
      const double arg = query.r1 + eta_j * (1.0 - query.r1) + pen / lam;
      return double(k + 1) / k * phi_inv(ExpParam(lam / n), arg) - query.r1 / k;
    };
    MinResult r = minimize_log_scale(f, 1.0, 10.0 * n);
    if (r.value < best.value) best = {r.value, k, r.x};
  }
  return best;
}

// Gaussian approximation of the previous bound through B-bar(q,d).
inline InductiveBound inductive_bound_gaussian(const VapnikQuery& query) {
  query.validate();
  const double n = double(query.n);
  const double slack = query.slack();
  InductiveBound best{kPosInf, 0, 0.0};
  for (int k : query.ks()) {
    const double d = complexity(ComplexityKind::Vc, query.h, query.n, k, query.eps).value +
                     std::log(double(k) * double(k + 1)) + slack;
    ScalarBoundQuery sq{query.n, query.r1 + 1.0 / (10.0 * n), d, query.eps};
    const double v = double(k + 1) / k * sqrt_bound(sq) - query.r1 / k;
    if (v < best.value) best = {v, k, 0.0};
  }
  return best;
}

// Weighted-grid variant: lambda restricted to {alpha^j} with the
// log j(j+1) union-bound surcharge, no eta machinery.
inline InductiveBound inductive_bound_grid(const VapnikQuery& query) {
  query.validate();
  const double n = double(query.n);
  InductiveBound best{kPosInf, 0, 0.0};
  for (int k : query.ks()) {
    const double d = complexity(ComplexityKind::Vc, query.h, query.n, k, query.eps).value;
    for (int j = 1;; ++j) {
      const double lam = std::pow(query.alpha, j);
      if (lam > 10.0 * n) break;
      const double pen = d + std::log(double(k) * double(k + 1) * double(j) * double(j + 1));
      const double v = double(k + 1) / k * -std::expm1(-lam * query.r1 / n - pen / n) /
                           -std::expm1(-lam / n) -
                       query.r1 / k;
      if (v < best.value) best = {v, k, lam};
    }
  }
  return best;
}

struct InductiveK1Bound {
  double exact;        // ratio form minimized over lambda
  double lambda_star;
  double gaussian;     // closed form solved in R
};

// k = 1, i.i.d. sample: exact ratio form and its Gaussian-approximation
// closed form, both with d''_1 = d'_1 + slack(N) and eta_J risk inflation.
inline InductiveK1Bound inductive_bound_k1_iid(const VapnikQuery& query, bool assume_iid = true) {
  query.validate();
  if (!assume_iid) throw std::invalid_argument("inductive_bound_k1_iid: requires the i.i.d. assumption");
  const double n = double(query.n);
  const double eta_j = query.eta_last();
  const double dpp = complexity(ComplexityKind::Vc, query.h, query.n, 1, query.eps).value + query.slack();
  const double r1 = query.r1;
  auto f = [&](double lam) {
    const double a = a_of_lambda(lam, n);
    const double den = 1.0 - a * (1.0 - 2.0 * r1);
    if (!(den > 0.0)) return kPosInf;
    return ((1.0 + a) * r1 + 2.0 * dpp / lam + 2.0 * eta_j * (1.0 - r1)) / den;
  };
  MinResult r = minimize_log_scale(f, 1.0, 10.0 * n);
  const double gaussian =
      r1 + dpp / n * (1.0 - 2.0 * r1) + 2.0 * eta_j +
      std::sqrt(4.0 * dpp * (1.0 - r1) * r1 / n + dpp * dpp / (n * n) * (1.0 - 2.0 * r1) * (1.0 - 2.0 * r1) +
                4.0 * dpp / n * (1.0 - 2.0 * r1) * eta_j);
  return {r.value, r.x, gaussian};
}

// Classical Vapnik bound: r1 + 2 d_V/N + sqrt(4 d_V r1/N + 4 d_V^2/N^2).
inline double vapnik_classical_from_dv(double r1, double dv, double n) {
  return r1 + 2.0 * dv / n + std::sqrt(4.0 * dv * r1 / n + 4.0 * dv * dv / (n * n));
}

// With the VC entropy bound d_V = h log(2eN/h) + log(4/eps).
inline double vapnik_classical(const VapnikQuery& query) {
  query.validate();
  const double n = double(query.n);
  double dv = std::log(4.0 / query.eps);
  if (query.h > 0) dv += double(query.h) * std::log(2.0 * std::exp(1.0) * n / double(query.h));
  return vapnik_classical_from_dv(query.r1, dv, n);
}

}  // namespace pacbayes
