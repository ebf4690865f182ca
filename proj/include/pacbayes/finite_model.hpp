#pragma once

// Exact Gibbs-posterior machinery over an explicit finite weighted hypothesis
// class. All weights live permanently in log space; probabilities only
// materialize at API boundaries. Models are immutable after construction and
// every operation is read-only.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacbayes/optimize.hpp"

namespace pacbayes {

// Normalized distribution over the hypotheses of one model, stored as log
// weights. -inf marks atoms outside the support.
struct PosteriorWeights {
  std::vector<double> log_weights;

  std::size_t size() const { return log_weights.size(); }

  static PosteriorWeights uniform(std::size_t h) {
    return {std::vector<double>(h, -std::log(double(h)))};
  }
  static PosteriorWeights dirac(std::size_t h, std::size_t index) {
    std::vector<double> w(h, kNegInf);
    w.at(index) = 0.0;
    return {std::move(w)};
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(log_weights.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_weights[i]);
    return p;
  }
};

// True risks for synthetic experiments, indexed like a model's hypotheses.
struct OracleRisk {
  std::vector<double> risk_values;
};

// K(rho, pi) = sum rho log(rho/pi); +inf when rho is not absolutely continuous
// with respect to pi. kl(rho, rho) = 0.
inline double kl(const PosteriorWeights& rho, const PosteriorWeights& pi) {
  if (rho.size() != pi.size()) throw std::invalid_argument("kl: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double lr = rho.log_weights[i];
    if (lr == kNegInf) continue;
    if (pi.log_weights[i] == kNegInf) return kPosInf;
    acc += std::exp(lr) * (lr - pi.log_weights[i]);
  }
  return std::max(acc, 0.0);
}

class FiniteHypothesisClass {
 public:
  // Loss matrix handed in point-major (N rows of H binary entries) with one
  // positive weight per hypothesis; weights are renormalized internally.
  static FiniteHypothesisClass from_loss_matrix(const std::vector<std::vector<std::uint8_t>>& point_rows,
                                                const std::vector<double>& weights) {
    if (point_rows.empty()) throw std::invalid_argument("model: N must be >= 1");
    const std::size_t h = weights.size();
    if (h == 0) throw std::invalid_argument("model: H must be >= 1");
    std::vector<double> logw(h);
    for (std::size_t j = 0; j < h; ++j) {
      if (!(weights[j] >= 0.0)) throw std::invalid_argument("model: negative weight");
      logw[j] = weights[j] > 0.0 ? std::log(weights[j]) : kNegInf;
    }
    std::vector<std::uint8_t> losses(h * point_rows.size());
    for (std::size_t i = 0; i < point_rows.size(); ++i) {
      if (point_rows[i].size() != h) throw std::invalid_argument("model: ragged loss matrix");
      for (std::size_t j = 0; j < h; ++j) {
        if (point_rows[i][j] > 1) throw std::invalid_argument("model: loss entries must be 0/1");
        losses[j * point_rows.size() + i] = point_rows[i][j];
      }
    }
    return FiniteHypothesisClass(point_rows.size(), std::move(losses), std::move(logw));
  }

  // Hypothesis-major construction (H rows of N bits).
  static FiniteHypothesisClass from_hypothesis_rows(const std::vector<std::vector<std::uint8_t>>& hyp_rows,
                                                    const std::vector<double>& log_weights) {
    if (hyp_rows.empty() || hyp_rows.size() != log_weights.size())
      throw std::invalid_argument("model: weight/row count mismatch");
    const std::size_t n = hyp_rows[0].size();
    if (n == 0) throw std::invalid_argument("model: N must be >= 1");
    std::vector<std::uint8_t> losses;
    losses.reserve(hyp_rows.size() * n);
    for (const auto& row : hyp_rows) {
      if (row.size() != n) throw std::invalid_argument("model: ragged loss matrix");
      for (auto b : row) {
        if (b > 1) throw std::invalid_argument("model: loss entries must be 0/1");
        losses.push_back(b);
      }
    }
    return FiniteHypothesisClass(n, std::move(losses), std::vector<double>(log_weights));
  }

  std::size_t n_points() const { return n_; }
  std::size_t n_hypotheses() const { return h_; }

  double empirical_risk(std::size_t theta) const { return risks_.at(theta); }
  const std::vector<double>& risks() const { return risks_; }
  std::uint8_t loss(std::size_t point, std::size_t theta) const {
    return losses_[theta * n_ + point];
  }

  PosteriorWeights prior() const { return {prior_log_}; }
  double prior_log_weight(std::size_t theta) const { return prior_log_.at(theta); }

  // Minimal empirical risk over the prior support (atoms with weight > 0).
  double min_support_risk() const { return min_support_risk_; }
  // All support minimizers of r; ties are kept as a set.
  const std::vector<std::size_t>& argmin_risk() const { return argmin_; }
  // Lowest-index minimizer, the deterministic theta-hat used by margin terms.
  std::size_t erm_index() const { return argmin_.front(); }

  void set_submodel_index(std::vector<int> index) {
    if (index.size() != h_) throw std::invalid_argument("submodel index size mismatch");
    submodel_ = std::move(index);
  }
  bool has_submodels() const { return !submodel_.empty(); }
  const std::vector<int>& submodel_index() const { return submodel_; }

  // log sum_theta pi(theta) e^{-lambda r(theta)}; concave in lambda with
  // derivative -gibbs_risk(lambda).
  double log_partition(double lambda) const {
    std::vector<double> terms(h_);
    for (std::size_t j = 0; j < h_; ++j) terms[j] = prior_log_[j] - lambda * risks_[j];
    return log_sum_exp(terms);
  }

  // Gibbs posterior pi_{exp(-lambda r)}.
  PosteriorWeights gibbs(double lambda) const {
    const double lz = log_partition(lambda);
    std::vector<double> w(h_);
    for (std::size_t j = 0; j < h_; ++j)
      w[j] = prior_log_[j] == kNegInf ? kNegInf : prior_log_[j] - lambda * risks_[j] - lz;
    return {std::move(w)};
  }

  double posterior_mean_risk(const PosteriorWeights& rho) const {
    if (rho.size() != h_) throw std::invalid_argument("posterior size mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < h_; ++j)
      if (rho.log_weights[j] != kNegInf) acc += std::exp(rho.log_weights[j]) * risks_[j];
    return acc;
  }

  // pi_{exp(-lambda r)}(r), computed exactly as a posterior expectation.
  double gibbs_risk(double lambda) const { return posterior_mean_risk(gibbs(lambda)); }

  // Integral of the Gibbs risk over [beta, lambda]; equals
  // logZ(beta) - logZ(lambda) by the fundamental theorem applied to the
  // concave log-partition.
  double gibbs_risk_integral(double beta, double lambda) const {
    if (beta > lambda) throw std::domain_error("gibbs_risk_integral: requires beta <= lambda");
    return log_partition(beta) - log_partition(lambda);
  }

  // d_e = sup_beta beta (gibbs_risk(beta) - min_support_risk), scanned on a
  // geometric grid; the supremand is unimodal in practice and the grid error
  // is second order. Always <= -log pi(r = min r).
  double empirical_dimension(double grid_ratio = 1.05) const {
    double best = 0.0;
    const double hi = 1e7 * double(n_);
    for (double beta = 1e-3; beta <= hi; beta *= grid_ratio) {
      const double v = beta * (gibbs_risk(beta) - min_support_risk_);
      if (std::isfinite(v) && v > best) best = v;
      // e^{-beta dr} underflow: past this point the excess is exactly 0
      if (beta * 1e-9 > 1.0 && v == 0.0) break;
    }
    return best;
  }

  // m'(theta1, theta2): fraction of sample points where exactly one of the
  // two hypotheses errs. A pseudo-distance with values in [0,1].
  double pair_distance(std::size_t theta1, std::size_t theta2) const {
    if (theta1 >= h_ || theta2 >= h_) throw std::out_of_range("pair_distance: index out of range");
    const std::uint8_t* r1 = &losses_[theta1 * n_];
    const std::uint8_t* r2 = &losses_[theta2 * n_];
    std::size_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) c += std::size_t(r1[i] != r2[i]);
    return double(c) / double(n_);
  }

  // g(theta) = sum_theta' rho(theta') m'(theta, theta'); O(H N_eff) using the
  // per-point posterior error probabilities.
  std::vector<double> mean_pair_distance(const PosteriorWeights& rho) const {
    if (rho.size() != h_) throw std::invalid_argument("posterior size mismatch");
    // p_i = rho-probability of erring on point i; then
    // g(theta) = (1/N) sum_i [sigma_i(theta)(1-p_i) + (1-sigma_i(theta)) p_i]
    std::vector<double> p(n_, 0.0);
    for (std::size_t j = 0; j < h_; ++j) {
      if (rho.log_weights[j] == kNegInf) continue;
      const double w = std::exp(rho.log_weights[j]);
      const std::uint8_t* row = &losses_[j * n_];
      for (std::size_t i = 0; i < n_; ++i)
        if (row[i]) p[i] += w;
    }
    std::vector<double> g(h_, 0.0);
    for (std::size_t j = 0; j < h_; ++j) {
      const std::uint8_t* row = &losses_[j * n_];
      double acc = 0.0;
      for (std::size_t i = 0; i < n_; ++i) acc += row[i] ? (1.0 - p[i]) : p[i];
      g[j] = acc / double(n_);
    }
    return g;
  }

  // log pi_{exp(-lambda1 r)}[ exp(xi * rho(m')) ] where rho(m') is the map
  // theta -> E_{theta'~rho} m'(theta, theta').
  double mgf_pair(double lambda1, const PosteriorWeights& rho, double xi) const {
    const std::vector<double> g = mean_pair_distance(rho);
    const PosteriorWeights gw = gibbs(lambda1);
    std::vector<double> terms(h_);
    for (std::size_t j = 0; j < h_; ++j)
      terms[j] = gw.log_weights[j] == kNegInf ? kNegInf : gw.log_weights[j] + xi * g[j];
    return log_sum_exp(terms);
  }

  // rho1 (x) rho2 (m'): the mean pairwise disagreement under two posteriors.
  double cross_pair_distance(const PosteriorWeights& rho1, const PosteriorWeights& rho2) const {
    const std::vector<double> g = mean_pair_distance(rho2);
    double acc = 0.0;
    for (std::size_t j = 0; j < h_; ++j)
      if (rho1.log_weights[j] != kNegInf) acc += std::exp(rho1.log_weights[j]) * g[j];
    return acc;
  }

  // -log pi(r = min_support_risk): the ceiling of the empirical dimension.
  double log_inv_minimizer_mass() const {
    std::vector<double> terms;
    for (std::size_t j : argmin_) terms.push_back(prior_log_[j]);
    return -log_sum_exp(terms);
  }

  // Renormalized restriction to one submodel; `back_map` recovers original
  // hypothesis indices.
  FiniteHypothesisClass restrict_to_submodel(int m, std::vector<std::size_t>* back_map = nullptr) const {
    if (!has_submodels()) throw std::logic_error("model has no submodel index");
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<double> logw;
    for (std::size_t j = 0; j < h_; ++j) {
      if (submodel_[j] != m) continue;
      rows.emplace_back(losses_.begin() + j * n_, losses_.begin() + (j + 1) * n_);
      logw.push_back(prior_log_[j]);
      if (back_map) back_map->push_back(j);
    }
    if (rows.empty()) throw std::invalid_argument("restrict_to_submodel: empty submodel");
    return from_hypothesis_rows(rows, logw);
  }

  std::vector<int> submodel_ids() const {
    std::vector<int> ids;
    for (int m : submodel_) {
      bool seen = false;
      for (int s : ids) seen = seen || (s == m);
      if (!seen) ids.push_back(m);
    }
    return ids;
  }

  // Text fixture format: one hypothesis per line, weight then N loss bits.
  void to_text(std::ostream& os) const {
    os.precision(17);
    for (std::size_t j = 0; j < h_; ++j) {
      os << std::exp(prior_log_[j]) << ' ';
      for (std::size_t i = 0; i < n_; ++i) os << int(losses_[j * n_ + i]);
      os << '\n';
    }
  }

  static FiniteHypothesisClass from_text(std::istream& is) {
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<double> weights;
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      double w;
      std::string bits;
      if (!(ls >> w >> bits)) throw std::invalid_argument("model text: malformed line");
      std::vector<std::uint8_t> row;
      for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("model text: loss bits must be 0/1");
        row.push_back(std::uint8_t(c - '0'));
      }
      if (n == 0) n = row.size();
      if (row.size() != n || n == 0) throw std::invalid_argument("model text: inconsistent row length");
      rows.push_back(std::move(row));
      weights.push_back(std::log(w));
    }
    if (rows.empty()) throw std::invalid_argument("model text: no hypotheses");
    return from_hypothesis_rows(rows, weights);
  }

 private:
  FiniteHypothesisClass(std::size_t n, std::vector<std::uint8_t> losses, std::vector<double> logw)
      : n_(n), h_(logw.size()), losses_(std::move(losses)), prior_log_(std::move(logw)) {
    const double lz = log_sum_exp(prior_log_);
    if (lz == kNegInf) throw std::invalid_argument("model: prior has empty support");
    for (auto& w : prior_log_)
      if (w != kNegInf) w -= lz;
    risks_.resize(h_);
    for (std::size_t j = 0; j < h_; ++j) {
      std::size_t c = 0;
      for (std::size_t i = 0; i < n_; ++i) c += losses_[j * n_ + i];
      risks_[j] = double(c) / double(n_);
    }
    min_support_risk_ = kPosInf;
    for (std::size_t j = 0; j < h_; ++j)
      if (prior_log_[j] != kNegInf) min_support_risk_ = std::min(min_support_risk_, risks_[j]);
    for (std::size_t j = 0; j < h_; ++j)
      if (prior_log_[j] != kNegInf && risks_[j] == min_support_risk_) argmin_.push_back(j);
  }

  std::size_t n_;
  std::size_t h_;
  std::vector<std::uint8_t> losses_;  // hypothesis-major
  std::vector<double> prior_log_;
  std::vector<double> risks_;
  double min_support_risk_ = 0.0;
  std::vector<std::size_t> argmin_;
  std::vector<int> submodel_;
};

}  // namespace pacbayes
