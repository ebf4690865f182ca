#pragma once

// The appendix model: classification of patterns in (0,1)^h by per-coordinate
// thresholds plus an arbitrary response table. The prior is Lebesgue x uniform
// (inductive) or uniform on the refined threshold grid (transductive); the
// Gibbs partition function factorizes over response cells, which keeps every
// quantity exact. Counters are integer counts over N, so partition products
// are reproducible bit-for-bit given one rounding mode.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pacbayes/optimize.hpp"
#include "pacbayes/relative_bounds.hpp"

namespace pacbayes {

struct LabeledDataset {
  std::vector<std::vector<double>> patterns;  // N rows of h coordinates in (0,1)
  std::vector<int> labels;                    // values in 1..label_count
};

// A hypothesis of the model: per-coordinate cell indices plus the response
// table over the 2^h corners (labels in 1..label_count).
struct ThresholdHypothesis {
  std::vector<int> cell;     // length h
  std::vector<int> answers;  // length 2^h
};

struct ThresholdSummary {
  std::uint64_t cell_count;
  std::uint64_t counters_digest;
  double min_kl;            // min over (t,a) of K(rho_{(t,a)}, pi)
  double kl_entropy_bound;  // h log(grid) + 2^h log|Y|
};

class ThresholdModel {
 public:
  // 2^h response tables: larger h is rejected instead of silently exploding.
  static constexpr int kMaxMeasurements = 12;

  static ThresholdModel build(const LabeledDataset& data, int label_count) {
    return ThresholdModel(data, label_count, nullptr);
  }

  // Same decomposition refined by shadow patterns, uniform prior on the
  // refined grid, empirical risk still computed from the training labels.
  ThresholdModel transductive_variant(const std::vector<std::vector<double>>& shadow_patterns) const {
    return ThresholdModel(data_, label_count_, &shadow_patterns);
  }

  int measurements() const { return h_; }
  std::int64_t n_points() const { return std::int64_t(data_.labels.size()); }
  int label_count() const { return label_count_; }
  bool atomic_cells() const { return atomic_; }
  int cells_on_axis(int j) const { return int(mids_.at(j).size()); }
  std::uint64_t cell_count() const {
    std::uint64_t c = 1;
    for (const auto& m : mids_) c *= m.size();
    return c;
  }

  double empirical_risk(const ThresholdHypothesis& theta) const {
    check_hypothesis(theta);
    const std::size_t n = data_.labels.size();
    std::size_t errors = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (answer_for(theta, i) != data_.labels[i]) ++errors;
    return double(errors) / double(n);
  }

  // log pi[exp(-lambda r)] via the per-cell product form, accumulated with a
  // deterministic pairwise-tree reduction.
  double log_partition(double lambda) const {
    if (!std::isfinite(lambda)) throw std::domain_error("log_partition: lambda must be finite");
    std::vector<double> terms;
    for_each_cell([&](const CellContext& cc) { terms.push_back(cell_log_term(cc, lambda)); });
    return log_sum_exp_tree(std::move(terms));
  }

  // pi_{exp(-lambda r)}(r) as the exact per-factor softmax mean of the
  // counters, not a finite difference.
  double gibbs_risk(double lambda) const {
    const double n = double(data_.labels.size());
    std::vector<double> terms, slopes;
    for_each_cell([&](const CellContext& cc) {
      double lt = cc.log_weight;
      double slope = 0.0;
      for (const auto& grp : cc.groups) {
        std::vector<double> ys(label_count_), ds(label_count_);
        for (int y = 1; y <= label_count_; ++y) {
          ds[y - 1] = double(grp.total - grp.per_label[y - 1]) / n;
          ys[y - 1] = -lambda * ds[y - 1];
        }
        const double lz = log_sum_exp(ys);
        lt += lz - std::log(double(label_count_));
        for (int y = 0; y < label_count_; ++y) slope += std::exp(ys[y] - lz) * ds[y];
      }
      terms.push_back(lt);
      slopes.push_back(slope);
    });
    const double lz = log_sum_exp(terms);
    double risk = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t) risk += std::exp(terms[t] - lz) * slopes[t];
    return risk;
  }

  struct GibbsStatistics {
    double risk;
    double d_e;
    double min_kl;
    double kl_entropy_bound;
  };

  GibbsStatistics gibbs_statistics(double lambda) const {
    GibbsStatistics out{};
    out.risk = gibbs_risk(lambda);
    const double min_r = min_achievable_risk();
    double de = 0.0;
    for (double beta = 1e-3; beta <= 1e7 * double(n_points()); beta *= 1.05) {
      const double v = beta * (gibbs_risk(beta) - min_r);
      if (std::isfinite(v) && v > de) de = v;
      if (beta > 1e9 && v <= 0.0) break;
    }
    out.d_e = de;
    out.min_kl = min_kl();
    out.kl_entropy_bound = kl_entropy_bound();
    return out;
  }

  // log pi[exp(-lambda r + xi m'(., theta_ref))] with the reference-hypothesis
  // counters; at xi = 0 this is log_partition(lambda).
  double mgf_with_reference(double lambda, double xi, const ThresholdHypothesis& theta_ref) const {
    check_hypothesis(theta_ref);
    const std::vector<std::uint8_t> ref_err = reference_errors(theta_ref);
    const double n = double(data_.labels.size());
    std::vector<double> terms;
    for_each_cell([&](const CellContext& cc) {
      double lt = cc.log_weight;
      for (const auto& grp : cc.groups) {
        std::vector<double> ys(label_count_);
        for (int y = 1; y <= label_count_; ++y) {
          const double d = double(grp.total - grp.per_label[y - 1]) / n;
          double bbar = 0.0;
          for (std::size_t idx : grp.members)
            bbar += std::abs(int(ref_err[idx]) - int(data_.labels[idx] != y));
          ys[y - 1] = -lambda * d + xi * (bbar / n);
        }
        lt += log_sum_exp(ys) - std::log(double(label_count_));
      }
      terms.push_back(lt);
    });
    return log_sum_exp_tree(std::move(terms));
  }

  // pi_{exp(-lambda r)}[m'(., theta_ref)], analytic (per-factor softmax means
  // of the reference counters).
  double mean_pair_to_reference(double lambda, const ThresholdHypothesis& theta_ref) const {
    check_hypothesis(theta_ref);
    const std::vector<std::uint8_t> ref_err = reference_errors(theta_ref);
    const double n = double(data_.labels.size());
    std::vector<double> terms, slopes;
    for_each_cell([&](const CellContext& cc) {
      double lt = cc.log_weight;
      double mean = 0.0;
      for (const auto& grp : cc.groups) {
        std::vector<double> ys(label_count_), bb(label_count_);
        for (int y = 1; y <= label_count_; ++y) {
          const double d = double(grp.total - grp.per_label[y - 1]) / n;
          double bbar = 0.0;
          for (std::size_t idx : grp.members)
            bbar += std::abs(int(ref_err[idx]) - int(data_.labels[idx] != y));
          ys[y - 1] = -lambda * d;
          bb[y - 1] = bbar / n;
        }
        const double lz = log_sum_exp(ys);
        lt += lz - std::log(double(label_count_));
        for (int y = 0; y < label_count_; ++y) mean += std::exp(ys[y] - lz) * bb[y];
      }
      terms.push_back(lt);
      slopes.push_back(mean);
    });
    const double lz = log_sum_exp(terms);
    double mean = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t) mean += std::exp(terms[t] - lz) * slopes[t];
    return mean;
  }

  enum class PredictMode { CellPosterior, Gibbs };

  // Label distribution for a new pattern. CellPosterior follows the uniform
  // randomization over the reference cell; Gibbs mixes all cells with their
  // posterior weights. Boundary patterns resolve by the 1[x >= t] convention.
  std::vector<double> predict(PredictMode mode, const std::vector<double>& x,
                              const ThresholdHypothesis* theta = nullptr,
                              double lambda = 0.0) const {
    if (int(x.size()) != h_) throw std::invalid_argument("predict: pattern arity mismatch");
    for (double v : x)
      if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("predict: pattern outside (0,1)");
    std::vector<double> probs(label_count_, 0.0);
    std::vector<double> split1(h_), split0(h_);

    if (mode == PredictMode::CellPosterior) {
      if (!theta) throw std::invalid_argument("predict: cell-posterior mode needs a hypothesis");
      check_hypothesis(*theta);
      double total = 1.0;
      for (int j = 0; j < h_; ++j) {
        coordinate_split(j, theta->cell[j], x[j], split1[j], split0[j]);
        total *= split1[j] + split0[j];
      }
      for_each_corner(split1, split0, [&](std::size_t corner, double mass) {
        probs[theta->answers[corner] - 1] += mass / total;
      });
      return probs;
    }

    std::vector<double> mix_terms;
    std::vector<std::vector<double>> label_terms(label_count_);
    const double n = double(data_.labels.size());
    for_each_cell([&](const CellContext& cc) {
      const double lt = cell_log_term(cc, lambda);
      mix_terms.push_back(lt);
      for (int j = 0; j < h_; ++j) coordinate_split(j, cc.cell[j], x[j], split1[j], split0[j]);
      for_each_corner(split1, split0, [&](std::size_t corner, double mass) {
        std::vector<double> ys(label_count_, 0.0);
        if (const Group* grp = cc.group_for(corner)) {
          for (int y = 1; y <= label_count_; ++y)
            ys[y - 1] = -lambda * double(grp->total - grp->per_label[y - 1]) / n;
        }
        const double lz = log_sum_exp(ys);
        const double log_frac = std::log(mass) - cc.log_weight;
        for (int y = 0; y < label_count_; ++y)
          label_terms[y].push_back(lt + log_frac + ys[y] - lz);
      });
    });
    const double lz = log_sum_exp_tree(std::move(mix_terms));
    for (int y = 0; y < label_count_; ++y)
      probs[y] = std::exp(log_sum_exp_tree(std::move(label_terms[y])) - lz);
    return probs;
  }

  // K(rho_{(t,a)}, pi) = -log w(Delta_t) + 2^h log|Y|.
  double cell_posterior_kl(const ThresholdHypothesis& theta) const {
    check_hypothesis(theta);
    double lw = 0.0;
    for (int j = 0; j < h_; ++j) lw += log_weights_[j][theta.cell[j]];
    return -lw + double(std::size_t(1) << h_) * std::log(double(label_count_));
  }

  double min_kl() const {
    double lw = 0.0;
    for (int j = 0; j < h_; ++j) {
      double best = kNegInf;
      for (double w : log_weights_[j]) best = std::max(best, w);
      lw += best;
    }
    return -lw + double(std::size_t(1) << h_) * std::log(double(label_count_));
  }

  double kl_entropy_bound() const {
    return double(h_) * std::log(double(grid_bound_)) +
           double(std::size_t(1) << h_) * std::log(double(label_count_));
  }

  // Empirical-risk minimizer (lowest cell index and label on ties;
  // unoccupied corners answer label 1).
  ThresholdHypothesis erm() const {
    ThresholdHypothesis best;
    double best_risk = kPosInf;
    for_each_cell([&](const CellContext& cc) {
      ThresholdHypothesis cand;
      cand.cell = cc.cell;
      cand.answers.assign(std::size_t(1) << h_, 1);
      double errors = 0.0;
      for (const auto& grp : cc.groups) {
        int besty = 1, bestc = grp.per_label[0];
        for (int y = 2; y <= label_count_; ++y)
          if (grp.per_label[y - 1] > bestc) { bestc = grp.per_label[y - 1]; besty = y; }
        cand.answers[grp.corner] = besty;
        errors += double(grp.total - bestc);
      }
      const double risk = errors / double(data_.labels.size());
      if (risk < best_risk) { best_risk = risk; best = std::move(cand); }
    });
    return best;
  }

  double min_achievable_risk() const {
    double best = kPosInf;
    for_each_cell([&](const CellContext& cc) {
      double errors = 0.0;
      for (const auto& grp : cc.groups) {
        int bestc = 0;
        for (int y = 1; y <= label_count_; ++y) bestc = std::max(bestc, grp.per_label[y - 1]);
        errors += double(grp.total - bestc);
      }
      best = std::min(best, errors / double(data_.labels.size()));
    });
    return best;
  }

  // Adapter for the Gibbs-comparison machinery with rho = the cell posterior
  // of theta_ref, for which rho(m')(.) = m'(., theta_ref) exactly. The Gibbs
  // moment term uses the triangle-inequality tangent bound through the same
  // reference, which keeps B a valid upper bound.
  GibbsComparisonTerms comparison_terms(const ThresholdHypothesis& theta_ref) const {
    check_hypothesis(theta_ref);
    GibbsComparisonTerms t;
    t.n = double(n_points());
    t.rho_r = empirical_risk(theta_ref);
    const double kl_pi = cell_posterior_kl(theta_ref);
    const double rr = t.rho_r;
    t.kl_rho_to_gibbs = [this, kl_pi, rr](double l1) {
      return kl_pi + l1 * rr + log_partition(l1);
    };
    t.gibbs_risk = [this](double l2) { return gibbs_risk(l2); };
    const ThresholdHypothesis ref = theta_ref;
    t.log_mgf_rho = [this, ref](double l1, double xi) {
      return mgf_with_reference(l1, xi, ref) - log_partition(l1);
    };
    t.log_mgf_gibbs = [this, ref](double l2, double xi) {
      const double lz = log_partition(l2);
      return (mgf_with_reference(l2, xi, ref) - lz) + xi * mean_pair_to_reference(l2, ref);
    };
    return t;
  }

  ThresholdSummary summary() const {
    ThresholdSummary s{};
    s.cell_count = cell_count();
    std::uint64_t digest = 1469598103934665603ull;  // FNV-1a
    auto mix = [&](std::uint64_t v) {
      digest ^= v;
      digest *= 1099511628211ull;
    };
    for_each_cell([&](const CellContext& cc) {
      for (const auto& grp : cc.groups) {
        mix(grp.corner);
        mix(std::uint64_t(grp.total));
        for (int c : grp.per_label) mix(std::uint64_t(c));
      }
    });
    s.counters_digest = digest;
    s.min_kl = min_kl();
    s.kl_entropy_bound = kl_entropy_bound();
    return s;
  }

 private:
  struct Group {
    std::size_t corner;           // response index in [0, 2^h)
    int total;                    // N b^t(c)
    std::vector<int> per_label;   // N b^t_y(c)
    std::vector<std::size_t> members;
  };
  struct CellContext {
    std::vector<int> cell;
    double log_weight;
    std::vector<Group> groups;
    const Group* group_for(std::size_t corner) const {
      for (const auto& g : groups)
        if (g.corner == corner) return &g;
      return nullptr;
    }
  };

  ThresholdModel(const LabeledDataset& data, int label_count,
                 const std::vector<std::vector<double>>* shadow)
      : data_(data), label_count_(label_count), atomic_(shadow != nullptr) {
    if (data.patterns.empty()) throw std::invalid_argument("threshold model: N must be >= 1");
    h_ = int(data.patterns[0].size());
    if (h_ < 1) throw std::invalid_argument("threshold model: h must be >= 1");
    if (h_ > kMaxMeasurements)
      throw std::invalid_argument("threshold model: h exceeds the supported cap of 12 measurements");
    if (label_count < 2) throw std::invalid_argument("threshold model: need at least two labels");
    if (data.labels.size() != data.patterns.size())
      throw std::invalid_argument("threshold model: label/pattern count mismatch");
    for (const auto& row : data.patterns) {
      if (int(row.size()) != h_) throw std::invalid_argument("threshold model: ragged pattern rows");
      for (double v : row)
        if (!(v > 0.0 && v < 1.0))
          throw std::invalid_argument("threshold model: coordinates must lie strictly inside (0,1)");
    }
    for (int y : data.labels)
      if (y < 1 || y > label_count)
        throw std::invalid_argument("threshold model: label outside 1..label_count");

    edges_.resize(h_);
    mids_.resize(h_);
    log_weights_.resize(h_);
    ranks_.assign(data.patterns.size() * h_, 0);
    const std::size_t extended_n = data.patterns.size() + (shadow ? shadow->size() : 0);
    grid_bound_ = extended_n + 1;
    for (int j = 0; j < h_; ++j) {
      std::vector<double> vals;
      for (const auto& row : data.patterns) vals.push_back(row[j]);
      if (shadow)
        for (const auto& row : *shadow) {
          if (int(row.size()) != h_) throw std::invalid_argument("threshold model: ragged shadow rows");
          if (!(row[j] > 0.0 && row[j] < 1.0))
            throw std::invalid_argument("threshold model: shadow coordinates must lie inside (0,1)");
          vals.push_back(row[j]);
        }
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      auto& e = edges_[j];
      e.push_back(0.0);
      for (double v : vals) e.push_back(v);
      e.push_back(1.0);
      for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        mids_[j].push_back(0.5 * (e[k] + e[k + 1]));
        log_weights_[j].push_back(atomic_ ? -std::log(double(e.size() - 1))
                                          : std::log(e[k + 1] - e[k]));
      }
      for (std::size_t i = 0; i < data.patterns.size(); ++i) {
        const auto it = std::lower_bound(vals.begin(), vals.end(), data.patterns[i][j]);
        ranks_[i * h_ + j] = int(it - vals.begin());  // cell indices <= rank respond 1
      }
    }
    if (double(h_) * std::log(double(extended_n) + 1.0) > 30.0)
      throw std::invalid_argument("threshold model: h log(N+1) exceeds 30 nats; exact enumeration refused");
  }

  void check_hypothesis(const ThresholdHypothesis& theta) const {
    if (int(theta.cell.size()) != h_) throw std::invalid_argument("hypothesis: cell arity mismatch");
    for (int j = 0; j < h_; ++j)
      if (theta.cell[j] < 0 || theta.cell[j] >= int(mids_[j].size()))
        throw std::out_of_range("hypothesis: cell index out of range");
    if (theta.answers.size() != (std::size_t(1) << h_))
      throw std::invalid_argument("hypothesis: response table size mismatch");
    for (int a : theta.answers)
      if (a < 1 || a > label_count_) throw std::invalid_argument("hypothesis: answer outside label set");
  }

  std::vector<std::uint8_t> reference_errors(const ThresholdHypothesis& theta) const {
    std::vector<std::uint8_t> e(data_.labels.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = std::uint8_t(answer_for(theta, i) != data_.labels[i]);
    return e;
  }

  int answer_for(const ThresholdHypothesis& theta, std::size_t i) const {
    std::size_t corner = 0;
    for (int j = 0; j < h_; ++j)
      if (ranks_[i * h_ + j] >= theta.cell[j]) corner |= (std::size_t(1) << j);
    return theta.answers[corner];
  }

  void for_each_cell(const std::function<void(const CellContext&)>& fn) const {
    CellContext cc;
    cc.cell.assign(h_, 0);
    const std::size_t n = data_.labels.size();
    std::vector<std::pair<std::size_t, std::size_t>> pts(n);  // (corner, point index)
    for (;;) {
      cc.log_weight = 0.0;
      for (int j = 0; j < h_; ++j) cc.log_weight += log_weights_[j][cc.cell[j]];
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t corner = 0;
        for (int j = 0; j < h_; ++j)
          if (ranks_[i * h_ + j] >= cc.cell[j]) corner |= (std::size_t(1) << j);
        pts[i] = {corner, i};
      }
      std::sort(pts.begin(), pts.end());
      cc.groups.clear();
      for (std::size_t i = 0; i < n;) {
        Group g;
        g.corner = pts[i].first;
        g.total = 0;
        g.per_label.assign(label_count_, 0);
        for (; i < n && pts[i].first == g.corner; ++i) {
          ++g.total;
          ++g.per_label[data_.labels[pts[i].second] - 1];
          g.members.push_back(pts[i].second);
        }
        cc.groups.push_back(std::move(g));
      }
      fn(cc);
      int j = 0;
      for (; j < h_; ++j) {
        if (++cc.cell[j] < int(mids_[j].size())) break;
        cc.cell[j] = 0;
      }
      if (j == h_) return;
    }
  }

  double cell_log_term(const CellContext& cc, double lambda) const {
    const double n = double(data_.labels.size());
    double lt = cc.log_weight;
    for (const auto& grp : cc.groups) {
      std::vector<double> ys(label_count_);
      for (int y = 1; y <= label_count_; ++y)
        ys[y - 1] = -lambda * double(grp.total - grp.per_label[y - 1]) / n;
      lt += log_sum_exp(ys) - std::log(double(label_count_));
    }
    return lt;
  }

  // Mass of {t' in cell : x >= t'_j} (responds 1) and its complement; for the
  // atomic grid the cell is a single midpoint and splits all-or-nothing.
  void coordinate_split(int j, int cell_index, double x, double& part1, double& part0) const {
    if (atomic_) {
      const double w = std::exp(log_weights_[j][cell_index]);
      const bool ge = x >= mids_[j][cell_index];
      part1 = ge ? w : 0.0;
      part0 = ge ? 0.0 : w;
    } else {
      const double lo = edges_[j][cell_index];
      const double hi = edges_[j][cell_index + 1];
      const double clamped = std::clamp(x, lo, hi);
      part1 = clamped - lo;  // thresholds t' <= x respond 1
      part0 = hi - clamped;
    }
  }

  void for_each_corner(const std::vector<double>& split1, const std::vector<double>& split0,
                       const std::function<void(std::size_t, double)>& fn) const {
    const std::size_t corners = std::size_t(1) << h_;
    for (std::size_t c = 0; c < corners; ++c) {
      double mass = 1.0;
      for (int j = 0; j < h_ && mass > 0.0; ++j) mass *= (c >> j & 1) ? split1[j] : split0[j];
      if (mass > 0.0) fn(c, mass);
    }
  }

  LabeledDataset data_;
  int label_count_;
  bool atomic_;
  int h_ = 0;
  std::size_t grid_bound_ = 0;                    // N+1, or (k+1)N+1 for the refined grid
  std::vector<std::vector<double>> edges_;        // per coordinate: 0, distinct values..., 1
  std::vector<std::vector<double>> mids_;         // per coordinate cell midpoints
  std::vector<std::vector<double>> log_weights_;  // per coordinate log cell weights
  std::vector<int> ranks_;                        // per (point, coordinate) distinct-value rank
};

}  // namespace pacbayes
