#pragma once

// Localized bounds: the flat prior is replaced by a Gibbs measure, trading the
// entropy term K(rho, pi) for Gibbs-risk integrals. Two code paths exist for
// the deviation flavors: an exact one over a FiniteHypothesisClass, and a
// surrogate one that applies the dimension inequality
//   int_beta^lambda gibbs_risk <= (lambda-beta) essinf r + d_e log(lambda/beta)
// as equality, which is how the published illustration numbers were produced.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pacbayes/bound_kernels.hpp"
#include "pacbayes/finite_model.hpp"
#include "pacbayes/nonlocal_bounds.hpp"
#include "pacbayes/optimize.hpp"

namespace pacbayes {

struct LocalBoundQuery {
  const FiniteHypothesisClass* model = nullptr;
  double eps = 0.0;
  double alpha = 0.0;   // 0 <= gamma < alpha < 1 where used
  double gamma = 0.0;
  double beta = 0.0;    // inverse-temperature parametrization
  double lambda = 0.0;  // 0 disables the fixed-lambda path
};

namespace detail {
// Gibbs machinery over arbitrary bounded values (used with oracle risks).
inline double values_log_partition(const FiniteHypothesisClass& model,
                                   const std::vector<double>& values, double beta) {
  std::vector<double> t(model.n_hypotheses());
  for (std::size_t j = 0; j < t.size(); ++j)
    t[j] = model.prior_log_weight(j) - beta * values[j];
  return log_sum_exp(t);
}
inline double values_gibbs_mean(const FiniteHypothesisClass& model,
                                const std::vector<double>& values, double beta) {
  const double lz = values_log_partition(model, values, beta);
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double lw = model.prior_log_weight(j);
    if (lw == kNegInf) continue;
    acc += std::exp(lw - beta * values[j] - lz) * values[j];
  }
  return acc;
}
inline double values_support_min(const FiniteHypothesisClass& model,
                                 const std::vector<double>& values) {
  double m = kPosInf;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (model.prior_log_weight(j) != kNegInf) m = std::min(m, values[j]);
  return m;
}
}  // namespace detail

struct LocalUnbiased {
  double lower;        // gibbs_risk(beta) itself
  double tight;        // PhiTilde^{-1} form minimized over lambda
  double simple;       // (1 - 2 beta/N)^{-1} gibbs_risk(beta)
  double lambda_star;  // minimizer of the tight form
};

// In-expectation bound for the Gibbs posterior at inverse temperature beta.
// The simple form needs beta < N/2; the tight form only needs some lambda
// with beta < N(1 - e^{-lambda/N}).
inline LocalUnbiased local_unbiased(const FiniteHypothesisClass& model, double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("local_unbiased: beta must be >= 0");
  const double n = double(model.n_points());
  const double risk = model.gibbs_risk(beta);
  if (beta == 0.0) {
    // no localization: plain unbiased bound coefficient at lambda = 2 beta
    // degenerates to the identity
    return {risk, risk, risk, 0.0};
  }
  if (!(beta < n)) throw std::domain_error("local_unbiased: beta must be < N");
  const double lam_min = -n * std::log1p(-beta / n);
  auto tight_at = [&](double lam) {
    const double denom_ok = n * -std::expm1(-lam / n);
    if (!(beta < denom_ok)) return kPosInf;
    return phi_tilde_inv(ExpParam(lam / n), beta / lam, risk);
  };
  MinResult r = minimize_log_scale(tight_at, lam_min * (1.0 + 1e-9), 10.0 * n);
  const double simple = beta < n / 2.0 ? risk / (1.0 - 2.0 * beta / n) : kPosInf;
  return {risk, r.value, simple, r.x};
}

struct LocalDeviation {
  double nonlinear;
  double linear;  // the bound M(rho) itself
  double m_value;
};

// Core of the local deviation bound, shared with the threshold model's
// product-form evaluators: `integral` is the Gibbs-risk integral over
// [N log(1+gamma), -N log(1-alpha)] and `kl_term` the divergence of rho from
// the Gibbs posterior at -N log(1-alpha).
inline LocalDeviation local_deviation_from_integral(double integral, double kl_term, double eps,
                                                    double alpha, double gamma, double n) {
  check_eps(eps);
  if (!(gamma >= 0.0 && gamma < alpha && alpha < 1.0))
    throw std::domain_error("local_deviation: requires 0 <= gamma < alpha < 1");
  const double m = (integral + kl_term - 2.0 * std::log(eps)) / (n * (alpha - gamma));
  if (alpha * gamma == 0.0) return {m, m, m};  // nonlinear formula degenerates to its limit
  const double ag = alpha - gamma;
  const double inner = 1.0 + 4.0 * alpha * gamma / (ag * ag) * -std::expm1(-ag * m);
  const double nonlinear = ag / (2.0 * alpha * gamma) * (std::sqrt(inner) - 1.0);
  return {nonlinear, m, m};
}

// Exact local deviation bound for rho = gibbs(-N log(1-alpha)).
inline LocalDeviation local_deviation(const FiniteHypothesisClass& model, double eps,
                                      double alpha, double gamma) {
  const double n = double(model.n_points());
  const double lam = -n * std::log1p(-alpha);
  const double beta = n * std::log1p(gamma);
  const double integral = model.gibbs_risk_integral(beta, lam);
  return local_deviation_from_integral(integral, 0.0, eps, alpha, gamma, n);
}

inline LocalDeviation local_deviation(const LocalBoundQuery& query) {
  if (!query.model) throw std::invalid_argument("local_deviation: missing model");
  return local_deviation(*query.model, query.eps, query.alpha, query.gamma);
}

// Surrogate model described only by (d_e, essinf r): the Gibbs-risk integral
// is replaced by its dimension bound taken as equality.
struct DimensionSurrogate {
  double d_e;
  double ess_inf_r;
  double n;
};

inline LocalDeviation local_deviation_surrogate(const DimensionSurrogate& s, double eps,
                                                double alpha, double gamma) {
  const double lam = -s.n * std::log1p(-alpha);
  const double beta = s.n * std::log1p(gamma);
  const double integral = (lam - beta) * s.ess_inf_r + s.d_e * std::log(lam / beta);
  return local_deviation_from_integral(integral, 0.0, eps, alpha, gamma, s.n);
}

// lambda = 2 beta corollary, linear form only: valid while
// exp(beta/N) + exp(-2 beta/N) < 2 (beta < 0.48 N).
inline double local_deviation_corollary(const FiniteHypothesisClass& model, double eps, double beta) {
  check_eps(eps);
  const double n = double(model.n_points());
  const double den = n * (2.0 - std::exp(beta / n) - std::exp(-2.0 * beta / n));
  if (!(den > 0.0)) throw std::domain_error("local_deviation_corollary: beta too large (needs < 0.48 N)");
  const double integral = model.gibbs_risk_integral(beta, 2.0 * beta);
  return (integral - 2.0 * std::log(eps)) / den;
}

inline double local_deviation_corollary_surrogate(const DimensionSurrogate& s, double eps, double beta) {
  check_eps(eps);
  const double den = s.n * (2.0 - std::exp(beta / s.n) - std::exp(-2.0 * beta / s.n));
  if (!(den > 0.0)) throw std::domain_error("local_deviation_corollary: beta too large (needs < 0.48 N)");
  const double integral = beta * s.ess_inf_r + s.d_e * std::log(2.0);
  return (integral - 2.0 * std::log(eps)) / den;
}

struct NonrandomLocal {
  double d_eta;
  double bound;
};

// Closed-form non-random bound from the margin-eta dimension of the true
// risk: essinf R + eta + 4 d/N + 2 sqrt(2 d (essinf R + eta)/N + 4 d^2/N^2).
inline double nonrandom_local_bound(double d_eta, double ess_inf_r, double eta, double n) {
  if (!(d_eta >= 0.0) || !(eta >= 0.0)) throw std::domain_error("nonrandom_local: d_eta, eta must be >= 0");
  const double base = ess_inf_r + eta;
  return base + 4.0 * d_eta / n +
         2.0 * std::sqrt(2.0 * d_eta * base / n + 4.0 * d_eta * d_eta / (n * n));
}

// Measures d_eta from a supplied oracle risk over the model's hypotheses and
// plugs it into the closed form.
inline NonrandomLocal nonrandom_local(const FiniteHypothesisClass& model, const OracleRisk& oracle,
                                      double eta) {
  if (oracle.risk_values.size() != model.n_hypotheses())
    throw std::invalid_argument("nonrandom_local: oracle size mismatch");
  if (!(eta >= 0.0)) throw std::domain_error("nonrandom_local: eta must be >= 0");
  const double essinf = detail::values_support_min(model, oracle.risk_values);
  double d_eta = 0.0;
  for (double beta = 1e-3; beta <= 1e7 * double(model.n_points()); beta *= 1.05) {
    const double v = beta * (detail::values_gibbs_mean(model, oracle.risk_values, beta) - essinf - eta);
    if (std::isfinite(v) && v > d_eta) d_eta = v;
  }
  return {d_eta, nonrandom_local_bound(d_eta, essinf, eta, double(model.n_points()))};
}

struct PartiallyLocal {
  double nonlinear;
  double b2;                          // the linear bound B2(nu, rho)
  std::vector<int> submodels;         // ids, aligned with nu_log_weights
  std::vector<double> nu_log_weights; // the nu actually used
};

// Partially localized bound over a disjoint union of submodels, with
// rho(m,.) = gibbs at lambda = -N log(1-alpha) inside each submodel and, by
// default, the bound-optimal nu (softmax of half log-partition ratios).
// mu is uniform over the submodels present in the index.
inline PartiallyLocal partially_local(const FiniteHypothesisClass& model, double eps,
                                      double alpha, double gamma,
                                      const std::optional<std::vector<double>>& nu_weights = std::nullopt) {
  check_eps(eps);
  if (!(gamma >= 0.0 && gamma < alpha && alpha < 1.0))
    throw std::domain_error("partially_local: requires 0 <= gamma < alpha < 1");
  if (!model.has_submodels()) throw std::invalid_argument("partially_local: model carries no submodel index");
  const double n = double(model.n_points());
  const double lam = -n * std::log1p(-alpha);
  const double beta = n * std::log1p(gamma);

  const std::vector<int> ids = model.submodel_ids();
  const std::size_t m_count = ids.size();
  std::vector<double> integral(m_count), risk(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    FiniteHypothesisClass sub = model.restrict_to_submodel(ids[m]);
    integral[m] = sub.gibbs_risk_integral(beta, lam);
    risk[m] = sub.gibbs_risk(lam);
  }

  std::vector<double> nu_log(m_count);
  const double mu_log = -std::log(double(m_count));
  if (nu_weights) {
    if (nu_weights->size() != m_count) throw std::invalid_argument("partially_local: nu size mismatch");
    double tot = 0.0;
    for (double w : *nu_weights) {
      if (!(w >= 0.0)) throw std::domain_error("partially_local: nu weights must be >= 0");
      tot += w;
    }
    if (!(tot > 0.0)) throw std::domain_error("partially_local: nu must have positive mass");
    for (std::size_t m = 0; m < m_count; ++m)
      nu_log[m] = (*nu_weights)[m] > 0.0 ? std::log((*nu_weights)[m] / tot) : kNegInf;
  } else {
    // optimal nu: proportional to mu * exp(-integral/2)
    for (std::size_t m = 0; m < m_count; ++m) nu_log[m] = mu_log - 0.5 * integral[m];
    const double lz = log_sum_exp(nu_log);
    for (double& w : nu_log) w -= lz;
  }

  // B2 = coeff * nu rho(r) + [2 K(nu,mu) + nu{K[rho, gibbs(beta)]} - 2 log eps]/(N(alpha-gamma))
  // with K[gibbs(lam), gibbs(beta)] = integral - (lam - beta) * risk(lam) inside each submodel.
  const double coeff = -std::log((1.0 - alpha) * (1.0 + gamma)) / (alpha - gamma);
  double nu_risk = 0.0, kl_nu_mu = 0.0, nu_kl = 0.0;
  for (std::size_t m = 0; m < m_count; ++m) {
    if (nu_log[m] == kNegInf) continue;
    const double w = std::exp(nu_log[m]);
    nu_risk += w * risk[m];
    kl_nu_mu += w * (nu_log[m] - mu_log);
    nu_kl += w * (integral[m] - (lam - beta) * risk[m]);
  }
  const double b2 = coeff * nu_risk +
                    (2.0 * std::max(kl_nu_mu, 0.0) + nu_kl - 2.0 * std::log(eps)) / (n * (alpha - gamma));
  const double ag = alpha - gamma;
  double nonlinear = b2;
  if (alpha * gamma > 0.0) {
    const double inner = 1.0 + 4.0 * alpha * gamma / (ag * ag) * -std::expm1(-ag * b2);
    nonlinear = ag / (2.0 * alpha * gamma) * (std::sqrt(inner) - 1.0);
  }
  return {nonlinear, b2, ids, nu_log};
}

}  // namespace pacbayes
