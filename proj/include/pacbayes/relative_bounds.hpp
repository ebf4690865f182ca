#pragma once

// Bounds on risk differences: margin functions, the relative deviation bound
// with its nonlinear root, the Mammen-Tsybakov closed-form rate, the
// Gibbs-comparison bound B(rho, beta, gamma) with its effective-temperature
// scan, the KL-to-Gibbs-prior bound, and posterior-vs-posterior comparison
// with chaining.
//
// The Gibbs-comparison core is written against closures so that both the
// explicit finite model and the threshold model's product-form evaluators can
// drive the same formula.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pacbayes/bound_kernels.hpp"
#include "pacbayes/finite_model.hpp"
#include "pacbayes/nonlocal_bounds.hpp"
#include "pacbayes/optimize.hpp"

namespace pacbayes {

// ---------------------------------------------------------------------------
// Margin functions

enum class MarginMode { EmpiricalFull, EmpiricalSub, Oracle };

// phi-bar(x) = max_theta m'(theta, theta_hat) - x (r(theta) - r(theta_hat)),
// theta_hat = lowest-index empirical minimizer. EmpiricalSub restricts the max
// to `subset`; Oracle uses supplied true risks (with the model's losses as the
// pattern population, so m' doubles as M').
inline double margin_function(const FiniteHypothesisClass& model, MarginMode mode, double x,
                              const std::vector<std::size_t>& subset = {},
                              const OracleRisk* oracle = nullptr) {
  if (!(x >= 0.0)) throw std::domain_error("margin_function: x must be >= 0");
  std::size_t ref;
  const std::vector<double>* vals;
  if (mode == MarginMode::Oracle) {
    if (!oracle || oracle->risk_values.size() != model.n_hypotheses())
      throw std::invalid_argument("margin_function: oracle risks required");
    vals = &oracle->risk_values;
    ref = 0;
    for (std::size_t j = 1; j < vals->size(); ++j)
      if ((*vals)[j] < (*vals)[ref]) ref = j;
  } else {
    vals = &model.risks();
    ref = model.erm_index();
  }
  auto value_at = [&](std::size_t j) {
    return model.pair_distance(j, ref) - x * ((*vals)[j] - (*vals)[ref]);
  };
  double best = kNegInf;
  if (mode == MarginMode::EmpiricalSub) {
    if (subset.empty()) throw std::domain_error("margin_function: empty subset");
    for (std::size_t j : subset) best = std::max(best, value_at(j));
  } else {
    for (std::size_t j = 0; j < model.n_hypotheses(); ++j) best = std::max(best, value_at(j));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Relative deviation bound (tanh-scale parameters 0 <= beta < lambda < 1)

// The solved nonlinear root: given the linear bound value b,
// (lambda-beta)/(2 lambda beta) (sqrt(1 + 4 lambda beta/(lambda-beta)^2
//   {1 - e^{-(lambda-beta) b}}) - 1) <= b.
inline double relative_root(double lambda, double beta, double b) {
  if (!(beta >= 0.0 && beta < lambda && lambda < 1.0))
    throw std::domain_error("relative_root: requires 0 <= beta < lambda < 1");
  if (lambda * beta == 0.0) return b;  // linear only
  const double lb = lambda - beta;
  const double inner = 1.0 + 4.0 * lambda * beta / (lb * lb) * -std::expm1(-lb * b);
  return lb / (2.0 * lambda * beta) * (std::sqrt(inner) - 1.0);
}

struct RelativeDeviation {
  double nonlinear;
  double b;  // the bound B(rho) itself (linear form)
};

// Empirical relative deviation bound for rho = the Gibbs posterior at the
// implied inverse temperature, against inf over `theta1_subset` (defaults to
// the whole class).
inline RelativeDeviation relative_deviation(const FiniteHypothesisClass& model, double eps,
                                            double lambda, double beta, double x,
                                            std::vector<std::size_t> theta1_subset = {}) {
  check_eps(eps);
  if (!(beta >= 0.0 && beta < lambda && lambda < 1.0))
    throw std::domain_error("relative_deviation: requires 0 <= beta < lambda < 1");
  if (!(x >= 0.0)) throw std::domain_error("relative_deviation: x must be >= 0");
  const double n = double(model.n_points());
  const double hi = 0.5 * n * std::log((1.0 + lambda) / ((1.0 - lambda) * std::pow(1.0 - lambda * lambda, x)));
  const double lo = 0.5 * n * std::log((1.0 + beta) / ((1.0 - beta) * std::pow(1.0 - beta * beta, x)));
  const double r_hat = model.empirical_risk(model.erm_index());
  const double integral = model.gibbs_risk_integral(lo, hi) - (hi - lo) * r_hat;
  if (theta1_subset.empty()) {
    theta1_subset.resize(model.n_hypotheses());
    for (std::size_t j = 0; j < theta1_subset.size(); ++j) theta1_subset[j] = j;
  }
  const double phib = margin_function(model, MarginMode::EmpiricalFull, x);
  const double y = std::log((1.0 + lambda) * (1.0 - beta) / ((1.0 - lambda) * (1.0 + beta))) /
                   -std::log((1.0 - lambda * lambda) * (1.0 - beta * beta));
  const double phit = margin_function(model, MarginMode::EmpiricalSub, y, theta1_subset);
  const double lb = lambda - beta;
  const double b = (integral - 2.0 * std::log(eps)) / (n * lb) -
                   std::log((1.0 - lambda * lambda) * (1.0 - beta * beta)) / (2.0 * lb) * (phib + phit);
  return {relative_root(lambda, beta, b), b};
}

// ---------------------------------------------------------------------------
// Mammen-Tsybakov closed-form rate

struct MammenRate {
  double bound;
  double lambda_bar;
};

// Under margin exponent kappa >= 1 with constant c and parametric dimension d,
// the Gibbs posterior at lambda-bar attains
//   inf R + (2 - 1/kappa)(kappa c)^{-1/(2kappa-1)} (8 log 2 d / N)^{kappa/(2kappa-1)}.
inline MammenRate nonrandom_relative_rate(double inf_r, double kappa, double c, double d, double n) {
  if (!(kappa >= 1.0)) throw std::domain_error("nonrandom_relative: kappa must be >= 1");
  if (!(c > 0.0)) throw std::domain_error("nonrandom_relative: c must be positive");
  if (!(d >= 0.0)) throw std::domain_error("nonrandom_relative: d must be >= 0");
  const double e1 = 1.0 / (2.0 * kappa - 1.0);
  const double ek = kappa * e1;
  const double excess = d == 0.0 ? 0.0
                                 : (2.0 - 1.0 / kappa) * std::pow(kappa * c, -e1) *
                                       std::pow(8.0 * std::log(2.0) * d / n, ek);
  const double lambda_bar = 0.5 * std::pow(8.0 * std::log(2.0) * d, (kappa - 1.0) * e1) *
                            std::pow(kappa * c, e1) * std::pow(n, ek);
  return {inf_r + excess, lambda_bar};
}

// Variant that measures d from an oracle risk: d = sup_gamma gamma (gibbs
// mean of R at gamma - inf R) over the support.
inline MammenRate nonrandom_relative(const FiniteHypothesisClass& model, const OracleRisk& oracle,
                                     double kappa, double c, std::optional<double> d = std::nullopt) {
  if (oracle.risk_values.size() != model.n_hypotheses())
    throw std::invalid_argument("nonrandom_relative: oracle size mismatch");
  double inf_r = kPosInf;
  for (std::size_t j = 0; j < oracle.risk_values.size(); ++j)
    if (model.prior_log_weight(j) != kNegInf) inf_r = std::min(inf_r, oracle.risk_values[j]);
  double dim = d.value_or(-1.0);
  if (!d) {
    dim = 0.0;
    for (double g = 1e-3; g <= 1e7 * double(model.n_points()); g *= 1.05) {
      std::vector<double> t(model.n_hypotheses());
      for (std::size_t j = 0; j < t.size(); ++j)
        t[j] = model.prior_log_weight(j) - g * oracle.risk_values[j];
      const double lz = log_sum_exp(t);
      double mean = 0.0;
      for (std::size_t j = 0; j < t.size(); ++j)
        if (t[j] != kNegInf) mean += std::exp(t[j] - lz) * oracle.risk_values[j];
      dim = std::max(dim, g * (mean - inf_r));
    }
  }
  return nonrandom_relative_rate(inf_r, kappa, c, dim, double(model.n_points()));
}

// ---------------------------------------------------------------------------
// Empirical relative bound (in expectation; eps accepted for interface
// compatibility but the formula carries no confidence level)

inline double empirical_relative(const FiniteHypothesisClass& model, double /*eps*/, double x,
                                 double alpha, double lambda,
                                 const PosteriorWeights* rho = nullptr,
                                 const std::vector<std::size_t>& theta1_subset = {}) {
  if (!(x >= 0.0) || !(alpha >= 0.0) || !(lambda > 0.0))
    throw std::domain_error("empirical_relative: parameters must be nonnegative, lambda positive");
  const double n = double(model.n_points());
  const double s = n * std::sinh(lambda / n) * (1.0 - x * std::tanh(lambda / (2.0 * n)));
  if (!(alpha < s))
    throw std::domain_error("empirical_relative: requires alpha < N sinh(lambda/N)(1 - x tanh(lambda/2N))");
  const double t = n * std::sinh(lambda / n) * std::tanh(lambda / (2.0 * n));
  PosteriorWeights gw = model.gibbs(alpha);
  const PosteriorWeights& post = rho ? *rho : gw;
  const double delta = model.posterior_mean_risk(post) - model.empirical_risk(model.erm_index());
  const double kl_term = kl(post, gw);
  const double phib = margin_function(model, MarginMode::EmpiricalFull, x);
  std::vector<std::size_t> sub = theta1_subset;
  if (sub.empty()) {
    sub.resize(model.n_hypotheses());
    for (std::size_t j = 0; j < sub.size(); ++j) sub[j] = j;
  }
  const double phit = margin_function(model, MarginMode::EmpiricalSub, (lambda - alpha) / t, sub);
  return (1.0 - (s - lambda) / (s - alpha)) * delta + kl_term / (s - alpha) +
         t / (s - alpha) * (phib + phit);
}

// ---------------------------------------------------------------------------
// Gibbs comparison B(rho, beta, gamma)

// Atomic distribution on the positive real line used for the union bound over
// (beta, gamma) (and lambda in posterior comparison).
struct NuAtoms {
  std::vector<double> values;
  std::vector<double> log_weights;

  // nu(alpha^k) = log(alpha)/log(alpha N) for 0 <= k < log(N)/log(alpha).
  static NuAtoms geometric(double n, double alpha = 2.0) {
    if (!(alpha > 1.0) || !(n > 1.0)) throw std::invalid_argument("NuAtoms: bad parameters");
    NuAtoms nu;
    const double lw = std::log(std::log(alpha) / std::log(alpha * n));
    for (double v = 1.0; v < n; v *= alpha) {
      nu.values.push_back(v);
      nu.log_weights.push_back(lw);
    }
    return nu;
  }

  double log_weight_of(double v) const {
    for (std::size_t i = 0; i < values.size(); ++i)
      if (std::abs(values[i] - v) <= 1e-12 * std::max(1.0, std::abs(v))) return log_weights[i];
    return kNegInf;
  }
};

// Everything the comparison formula needs, as closures; lets the threshold
// model's product-form evaluators reuse this code path.
struct GibbsComparisonTerms {
  double n = 0;
  double rho_r = 0;                                       // rho(r)
  std::function<double(double)> kl_rho_to_gibbs;          // lambda1 -> K[rho, gibbs(lambda1)]
  std::function<double(double)> gibbs_risk;               // lambda2 -> gibbs risk
  std::function<double(double, double)> log_mgf_rho;      // (lambda1, xi) -> log pi_l1[e^{xi rho(m')}]
  std::function<double(double, double)> log_mgf_gibbs;    // (lambda2, xi) -> log pi_l2[e^{xi pi_l2(m')}]
};

inline GibbsComparisonTerms make_comparison_terms(const FiniteHypothesisClass& model,
                                                  const PosteriorWeights& rho) {
  GibbsComparisonTerms t;
  t.n = double(model.n_points());
  t.rho_r = model.posterior_mean_risk(rho);
  t.kl_rho_to_gibbs = [&model, rho](double l1) { return kl(rho, model.gibbs(l1)); };
  t.gibbs_risk = [&model](double l2) { return model.gibbs_risk(l2); };
  t.log_mgf_rho = [&model, rho](double l1, double xi) { return model.mgf_pair(l1, rho, xi); };
  t.log_mgf_gibbs = [&model](double l2, double xi) {
    return model.mgf_pair(l2, model.gibbs(l2), xi);
  };
  return t;
}

struct GibbsComparisonResult {
  double b = kPosInf;
  double risk_diff_bound = kPosInf;  // on rho(R) - pi_{exp(-beta R)}(R), via F_{gamma,beta}
  double lambda1_star = 0, lambda2_star = 0;
};

// B(rho, beta, gamma): inner minimization over (lambda1, lambda2) geometric
// grids (64 points spanning [beta/4, 4 gamma] intersected with the
// constraints lambda1 <= gamma, lambda2 > beta gamma/(N tanh(gamma/N))).
// +infinity when beta or gamma carries no nu mass.
inline GibbsComparisonResult gibbs_comparison_terms(const GibbsComparisonTerms& t, double eps,
                                                    const NuAtoms& nu, double beta, double gamma,
                                                    int grid_points = 64) {
  check_eps(eps);
  if (!(beta > 0.0 && gamma > 0.0)) throw std::domain_error("gibbs_comparison: beta, gamma must be positive");
  GibbsComparisonResult res;
  const double log_pen = std::log(eps) + nu.log_weight_of(beta) + nu.log_weight_of(gamma);
  if (log_pen == kNegInf) return res;  // nu(beta) = 0 or nu(gamma) = 0 -> B = +inf
  const double n = t.n;
  const double tg = std::tanh(gamma / n);
  const double xi = n * std::log(std::cosh(gamma / n));
  const double l2_min = beta * gamma / (n * tg);

  const double lo = std::max(beta / 4.0, 1e-8);
  const double hi = 4.0 * gamma;
  const double ratio = std::pow(hi / lo, 1.0 / double(grid_points - 1));
  std::vector<double> grid;
  for (int i = 0; i < grid_points; ++i) grid.push_back(lo * std::pow(ratio, i));
  grid.push_back(gamma);  // the lambda1 = gamma branch cancels the risk terms

  // lambda2-dependent pieces are lambda1-independent: precompute them once
  struct L2Entry {
    double value;
    double risk;
    double scaled_finv;  // (beta/lambda2) F^{-1}_{gamma, beta gamma/lambda2}(...)
  };
  std::vector<L2Entry> l2s;
  for (double l2 : grid) {
    if (!(l2 > l2_min)) continue;
    const double finv =
        f_gamma_alpha_inv(gamma, beta * gamma / l2, n, t.log_mgf_gibbs(l2, xi) - log_pen);
    l2s.push_back({l2, t.gibbs_risk(l2), beta / l2 * finv});
  }
  for (double l1 : grid) {
    if (l1 > gamma) continue;
    const double base = t.kl_rho_to_gibbs(l1) + t.log_mgf_rho(l1, xi) - log_pen;
    for (const L2Entry& e : l2s) {
      const double b = base + (gamma - l1) * (t.rho_r - e.risk + e.scaled_finv);
      if (b < res.b) {
        res.b = b;
        res.lambda1_star = l1;
        res.lambda2_star = e.value;
      }
    }
  }

  // risk-difference bound: the largest x with F_{gamma,beta}(x) <= B.
  if (res.b < kPosInf && beta < n * tg) {
    const double x_hi = (1.0 - 1e-14) / tg;
    const double x_min = beta > 0.0 ? std::max(1.0 / tg - n / beta, -1.0) : -1.0;
    auto f = [&](double x) { return -n * std::log1p(-tg * x) - beta * x; };
    if (res.b >= f(x_hi)) {
      res.risk_diff_bound = x_hi;
    } else if (res.b >= f(x_min)) {
      res.risk_diff_bound = solve_increasing(f, res.b, x_min, x_hi);
    } else {
      res.risk_diff_bound = x_min;  // numerically infeasible level: cap at the minimizer
    }
  }
  return res;
}

inline GibbsComparisonResult gibbs_comparison(const FiniteHypothesisClass& model, double eps,
                                              const NuAtoms& nu, const PosteriorWeights& rho,
                                              double beta, double gamma) {
  return gibbs_comparison_terms(make_comparison_terms(model, rho), eps, nu, beta, gamma);
}

// ---------------------------------------------------------------------------
// Effective temperature

struct TemperatureEstimate {
  double beta_hat = 0.0;            // 0 means "no certificate found"
  double gamma_star = 0.0;          // witness with B(beta_hat, gamma_star) <= 0
  double b_at_witness = kPosInf;
  std::vector<double> grid;                       // the (beta,gamma) atoms scanned
  std::vector<std::pair<double, double>> certificate;  // (gamma, B) at beta_hat
};

// beta-hat(rho) = sup{beta : inf_gamma B(rho,beta,gamma) <= 0}, scanned over
// the atom grid descending in beta, gamma restricted to N tanh(gamma/N) > beta.
inline TemperatureEstimate effective_temperature_terms(const GibbsComparisonTerms& t, double eps,
                                                       const NuAtoms& nu) {
  TemperatureEstimate est;
  est.grid = nu.values;
  std::vector<double> betas = nu.values;
  std::sort(betas.begin(), betas.end(), std::greater<double>());
  for (double beta : betas) {
    std::vector<std::pair<double, double>> cert;
    double best_gamma = 0.0, best_b = kPosInf;
    for (double gamma : nu.values) {
      if (!(t.n * std::tanh(gamma / t.n) > beta)) continue;
      const double b = gibbs_comparison_terms(t, eps, nu, beta, gamma).b;
      cert.emplace_back(gamma, b);
      if (b < best_b) { best_b = b; best_gamma = gamma; }
    }
    if (best_b <= 0.0) {
      est.beta_hat = beta;
      est.gamma_star = best_gamma;
      est.b_at_witness = best_b;
      est.certificate = std::move(cert);
      return est;
    }
  }
  return est;  // beta_hat = 0: no certificate
}

inline TemperatureEstimate effective_temperature(const FiniteHypothesisClass& model, double eps,
                                                 const PosteriorWeights& rho, const NuAtoms& nu) {
  return effective_temperature_terms(make_comparison_terms(model, rho), eps, nu);
}

// ---------------------------------------------------------------------------
// KL to a Gibbs prior

// Empirical upper bound on K[rho, pi_{exp(-beta R)}] for beta < N tanh(gamma/N).
inline double kl_to_gibbs(const FiniteHypothesisClass& model, double eps,
                          const PosteriorWeights& rho, double beta, double gamma) {
  check_eps(eps);
  const double n = double(model.n_points());
  const double tg = std::tanh(gamma / n);
  if (!(beta < n * tg)) throw std::domain_error("kl_to_gibbs: requires beta < N tanh(gamma/N)");
  const double lambda_eff = beta * gamma / (n * tg);
  const double xi = beta / tg * std::log(std::cosh(gamma / n));
  const double coeff = 1.0 / (1.0 - beta / (n * tg));
  return coeff * (kl(rho, model.gibbs(lambda_eff)) - beta / (n * tg) * std::log(eps) +
                  model.mgf_pair(lambda_eff, rho, xi));
}

// ---------------------------------------------------------------------------
// Comparing two posterior distributions, with chaining

// Xi_a(q) = tanh(a)^{-1} (1 - e^{-aq}) <= (a/tanh a) q.
inline double xi_map(double a, double q) {
  if (a == 0.0) return q;
  return -std::expm1(-a * q) / std::tanh(a);
}

struct CompareGrids {
  NuAtoms nu;  // atoms for lambda and for the (beta, gamma) pairs
};

namespace detail {
struct ComparisonSide {
  // per (prior index, beta, gamma) with beta < gamma: the localized entropy
  // estimate K[rho, pi^i_{exp(-beta r)}] + log mgf and its penalty bookkeeping
  std::vector<double> beta, gamma, entropy, penalty_coeff, log_nu_pair;
};

// With submodels, the prior sequence pi^i runs over the renormalized
// submodel priors with uniform mu; otherwise the model's single prior.
inline ComparisonSide build_side(const FiniteHypothesisClass& model, const PosteriorWeights& rho,
                                 const NuAtoms& nu) {
  ComparisonSide side;
  const double n = double(model.n_points());
  const std::vector<double> g_full = model.mean_pair_distance(rho);

  struct PriorView {
    FiniteHypothesisClass sub;
    std::vector<std::size_t> back;
    double log_mu;
  };
  std::vector<PriorView> priors;
  if (model.has_submodels()) {
    const std::vector<int> ids = model.submodel_ids();
    for (int id : ids) {
      std::vector<std::size_t> back;
      FiniteHypothesisClass sub = model.restrict_to_submodel(id, &back);
      priors.push_back({std::move(sub), std::move(back), -std::log(double(ids.size()))});
    }
  }

  auto add_entries = [&](const FiniteHypothesisClass& m, const std::vector<std::size_t>* back,
                         double log_mu) {
    // restrict rho (and the full-model pair distances) to this prior's support
    std::vector<double> rho_log(m.n_hypotheses()), g(m.n_hypotheses());
    double outside = 0.0;
    if (back) {
      std::vector<bool> inside(model.n_hypotheses(), false);
      for (std::size_t k = 0; k < back->size(); ++k) {
        rho_log[k] = rho.log_weights[(*back)[k]];
        g[k] = g_full[(*back)[k]];
        inside[(*back)[k]] = true;
      }
      for (std::size_t j = 0; j < model.n_hypotheses(); ++j)
        if (!inside[j] && rho.log_weights[j] != kNegInf) outside += 1.0;
      if (outside > 0.0) return;  // K[rho, pi^i] = +inf
    } else {
      rho_log = rho.log_weights;
      g = g_full;
    }
    for (double b : nu.values)
      for (double gm : nu.values) {
        if (!(b < gm)) continue;
        const double xi = b * (n / gm) * std::log(std::cosh(gm / n));
        const PosteriorWeights gw = m.gibbs(b);
        double kl_term = kl(PosteriorWeights{rho_log}, gw);
        if (kl_term == kPosInf) continue;
        std::vector<double> terms(m.n_hypotheses());
        for (std::size_t j = 0; j < terms.size(); ++j)
          terms[j] = gw.log_weights[j] == kNegInf ? kNegInf : gw.log_weights[j] + xi * g[j];
        const double mgf = log_sum_exp(terms);
        side.beta.push_back(b);
        side.gamma.push_back(gm);
        side.entropy.push_back((kl_term + mgf) / (1.0 - b / gm));
        side.penalty_coeff.push_back(1.0 / (gm / b - 1.0));
        side.log_nu_pair.push_back(nu.log_weight_of(b) + nu.log_weight_of(gm) + log_mu);
      }
  };

  if (priors.empty()) {
    add_entries(model, nullptr, 0.0);
  } else {
    for (const auto& p : priors) add_entries(p.sub, &p.back, p.log_mu);
  }
  return side;
}
}  // namespace detail

// B(rho1, rho2): high-probability upper bound on rho2(R) - rho1(R), minimized
// over the lambda atoms and the per-side (beta, gamma) pairs.
inline double compare_posteriors_pair(const FiniteHypothesisClass& model, double eps,
                                      const PosteriorWeights& rho1, const PosteriorWeights& rho2,
                                      const CompareGrids& grids) {
  check_eps(eps);
  const double n = double(model.n_points());
  const double diff_r = model.posterior_mean_risk(rho2) - model.posterior_mean_risk(rho1);
  const double cross = model.cross_pair_distance(rho1, rho2);
  const detail::ComparisonSide s1 = detail::build_side(model, rho1, grids.nu);
  const detail::ComparisonSide s2 = detail::build_side(model, rho2, grids.nu);
  if (s1.beta.empty() || s2.beta.empty()) return kPosInf;
  double best = kPosInf;
  for (std::size_t li = 0; li < grids.nu.values.size(); ++li) {
    const double lam = grids.nu.values[li];
    const double var_term = n / lam * std::log(std::cosh(lam / n)) * cross;
    for (std::size_t i = 0; i < s1.beta.size(); ++i)
      for (std::size_t j = 0; j < s2.beta.size(); ++j) {
        const double log_pen = -std::log(3.0) + s1.log_nu_pair[i] + s2.log_nu_pair[j] +
                               grids.nu.log_weights[li] + std::log(eps);
        const double core = diff_r + var_term + (s1.entropy[i] + s2.entropy[j]) / lam -
                            (s1.penalty_coeff[i] + s2.penalty_coeff[j] + 1.0) * log_pen / lam;
        best = std::min(best, xi_map(lam / n, core));
      }
  }
  return best;
}

struct ComparePosteriorsResult {
  double b;        // direct bound B(rho1, rho2)
  double b_tilde;  // chained (subadditive) bound through the chain set
};

// B-tilde: shortest path through the chain set under the edge weights
// B(.,.), computed by Floyd-Warshall; subadditive by construction. An empty
// chain set makes B-tilde = B.
inline ComparePosteriorsResult compare_posteriors(const FiniteHypothesisClass& model, double eps,
                                                  const PosteriorWeights& rho1,
                                                  const PosteriorWeights& rho2,
                                                  const CompareGrids& grids,
                                                  const std::vector<PosteriorWeights>& chain_set = {}) {
  const double direct = compare_posteriors_pair(model, eps, rho1, rho2, grids);
  if (chain_set.empty()) return {direct, direct};
  std::vector<const PosteriorWeights*> nodes = {&rho1, &rho2};
  for (const auto& p : chain_set) nodes.push_back(&p);
  const std::size_t m = nodes.size();
  std::vector<std::vector<double>> dist(m, std::vector<double>(m, kPosInf));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) dist[i][j] = compare_posteriors_pair(model, eps, *nodes[i], *nodes[j], grids);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
  return {direct, std::min(direct, dist[0][1])};
}

}  // namespace pacbayes
