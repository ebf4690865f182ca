#pragma once

// Canonical-hyperplane and kernel SVM training in dual form, kernel algebra
// with a PSD check, margin-to-dimension conversion, and the SVM-specific
// transductive/inductive margin bounds. The dual solver is a maximal
// violating pair coordinate-ascent sweep with deterministic lowest-index tie
// breaks; instances are independent, one solver per thread is safe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacbayes/bound_kernels.hpp"
#include "pacbayes/optimize.hpp"
#include "pacbayes/transductive_vapnik.hpp"

namespace pacbayes {

using Point = std::vector<double>;

namespace detail {

inline double dot(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double sq_dist(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sq_dist: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double min_eigenvalue_sym(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 0.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-300) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k][p], mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p][k], mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
  }
  double mn = m[0][0];
  for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, m[i][i]);
  return mn;
}

// Phase-1 simplex feasibility for y_i(<w, x_i> - b) >= 1 (free w, b).
// Small dense tableau with Bland's rule; exact enough for the tiny instances
// the VC check uses.
inline bool lp_separable(const std::vector<Point>& points, const std::vector<int>& labels) {
  const std::size_t rows = points.size();
  if (rows == 0) return true;
  const std::size_t d = points[0].size();
  const std::size_t nfree = d + 1;           // w, b
  const std::size_t nvars = 2 * nfree + rows;  // split free vars + slacks
  // constraints: sum_j a_ij z_j - s_i = 1, artificial basis starts as a_i
  std::vector<std::vector<double>> t(rows, std::vector<double>(nvars + 1, 0.0));
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> coef(nfree);
    for (std::size_t j = 0; j < d; ++j) coef[j] = labels[i] * points[i][j];
    coef[d] = -labels[i];
    for (std::size_t j = 0; j < nfree; ++j) {
      t[i][j] = coef[j];
      t[i][nfree + j] = -coef[j];
    }
    t[i][2 * nfree + i] = -1.0;  // slack
    t[i][nvars] = 1.0;           // rhs
  }
  std::vector<std::size_t> basis(rows);
  // objective row: minimize sum of artificials = sum over rows of (rhs - row)
  std::vector<double> obj(nvars + 1, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    basis[i] = nvars + i;  // artificial marker
    for (std::size_t j = 0; j <= nvars; ++j) obj[j] += t[i][j];
  }
  for (int iter = 0; iter < 10000; ++iter) {
    // Bland: first column with positive reduced cost
    std::size_t pivot_col = nvars;
    for (std::size_t j = 0; j < nvars; ++j)
      if (obj[j] > 1e-9) { pivot_col = j; break; }
    if (pivot_col == nvars) break;
    std::size_t pivot_row = rows;
    double best_ratio = kPosInf;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t[i][pivot_col] > 1e-12) {
        const double ratio = t[i][nvars] / t[i][pivot_col];
        if (ratio < best_ratio - 1e-15) { best_ratio = ratio; pivot_row = i; }
      }
    }
    if (pivot_row == rows) break;  // unbounded pivot: cannot happen in phase 1
    const double pv = t[pivot_row][pivot_col];
    for (std::size_t j = 0; j <= nvars; ++j) t[pivot_row][j] /= pv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pivot_row) continue;
      const double f = t[i][pivot_col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= nvars; ++j) t[i][j] -= f * t[pivot_row][j];
    }
    const double fo = obj[pivot_col];
    for (std::size_t j = 0; j <= nvars; ++j) obj[j] -= fo * t[pivot_row][j];
    basis[pivot_row] = pivot_col;
  }
  return obj[nvars] < 1e-7;  // artificial sum driven to zero <=> feasible
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kernel algebra: every combinator preserves positive semi-definiteness.

class Kernel {
 public:
  double operator()(const Point& a, const Point& b) const { return eval_(a, b); }
  const std::string& description() const { return desc_; }

  static Kernel linear() {
    return Kernel([](const Point& a, const Point& b) { return detail::dot(a, b); }, "linear");
  }
  // exp(-|x - x'|^2 / width^2): unit diagonal, strictly PD on distinct points.
  static Kernel gaussian(double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian kernel: width must be positive");
    const double w2 = width * width;
    return Kernel([w2](const Point& a, const Point& b) {
      return std::exp(-detail::sq_dist(a, b) / w2);
    }, "gaussian(" + std::to_string(width) + ")");
  }
  // p(K) for a polynomial with nonnegative coefficients c0 + c1 K + c2 K^2...
  static Kernel polynomial(Kernel base, std::vector<double> coeffs) {
    for (double c : coeffs)
      if (!(c >= 0.0)) throw std::invalid_argument("polynomial kernel: coefficients must be >= 0");
    return Kernel([base, coeffs](const Point& a, const Point& b) {
      const double k = base(a, b);
      double acc = 0.0, pw = 1.0;
      for (double c : coeffs) { acc += c * pw; pw *= k; }
      return acc;
    }, "polynomial(" + base.desc_ + ")");
  }
  static Kernel scaled_sum(double a, Kernel k1, Kernel k2) {
    if (!(a >= 0.0)) throw std::invalid_argument("scaled_sum kernel: scale must be >= 0");
    return Kernel([a, k1, k2](const Point& x, const Point& y) {
      return a * k1(x, y) + k2(x, y);
    }, "scaled_sum(" + k1.desc_ + "," + k2.desc_ + ")");
  }
  static Kernel product(Kernel k1, Kernel k2) {
    return Kernel([k1, k2](const Point& x, const Point& y) { return k1(x, y) * k2(x, y); },
                  "product(" + k1.desc_ + "," + k2.desc_ + ")");
  }
  static Kernel feature_map(std::function<double(const Point&)> g) {
    return Kernel([g](const Point& x, const Point& y) { return g(x) * g(y); }, "feature_map");
  }

 private:
  Kernel(std::function<double(const Point&, const Point&)> f, std::string d)
      : eval_(std::move(f)), desc_(std::move(d)) {}
  std::function<double(const Point&, const Point&)> eval_;
  std::string desc_;
};

// Gram matrix with a PSD sanity check (eigenvalue floor -1e-8 * trace).
inline std::vector<std::vector<double>> gram(const Kernel& kernel, const std::vector<Point>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g[i][j] = g[j][i] = kernel(points[i], points[j]);
      if (i == j) trace += g[i][i];
    }
  if (n > 0) {
    const double floor = -1e-8 * std::max(trace, 1.0);
    if (detail::min_eigenvalue_sym(g) < floor)
      throw std::runtime_error("gram: kernel matrix fails the PSD check");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Dual solver

enum class SvmStatus { Separable, BoxSolved, Inseparable, Degenerate };

struct DualSolution {
  SvmStatus status = SvmStatus::Degenerate;
  std::vector<double> alpha;
  double bias = 0.0;             // b*
  double box = kPosInf;          // active cap, +inf for hard margin
  std::vector<std::size_t> support_set;
  double margin = 0.0;           // 1/|w| in feature space
  double objective = 0.0;        // F(alpha) = |w|^2 - 2 sum alpha
  double kkt_residual = kPosInf;
  std::vector<double> scores;    // F_i = sum_j alpha_j y_j K_ij
};

// Minimizes F(alpha) = |sum alpha_i y_i x_i|^2 - 2 sum alpha_i over
// {alpha >= 0, sum y alpha = 0} (optionally alpha <= box), by maximal
// violating pair selection. Hard-margin inseparability shows up as a
// diverging sum of multipliers and is reported as a status, not an exception.
inline DualSolution solve_dual(const std::vector<std::vector<double>>& gram_matrix,
                               const std::vector<int>& labels, double box = kPosInf,
                               double tol = 1e-8, std::int64_t max_updates = 2000000) {
  const std::size_t n = labels.size();
  if (gram_matrix.size() != n) throw std::invalid_argument("solve_dual: gram/label size mismatch");
  DualSolution sol;
  sol.box = box;
  bool has_pos = false, has_neg = false;
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw std::invalid_argument("solve_dual: labels must be +-1");
  }
  if (!has_pos || !has_neg) {
    sol.status = SvmStatus::Degenerate;
    sol.alpha.assign(n, 0.0);
    sol.scores.assign(n, 0.0);
    return sol;
  }

  std::vector<double> alpha(n, 0.0), f(n, 0.0);  // f = raw scores
  const bool boxed = std::isfinite(box);
  double sum_alpha = 0.0;
  double prev_obj = 0.0;
  sol.status = boxed ? SvmStatus::BoxSolved : SvmStatus::Separable;

  for (std::int64_t it = 0; it < max_updates; ++it) {
    // maximal violating pair on y_k - F_k
    double m_up = -kPosInf, m_low = kPosInf;
    std::size_t i_up = n, i_low = n;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = labels[k] - f[k];
      const bool in_up = (labels[k] == 1 && alpha[k] < box) || (labels[k] == -1 && alpha[k] > 0.0);
      const bool in_low = (labels[k] == 1 && alpha[k] > 0.0) || (labels[k] == -1 && alpha[k] < box);
      if (in_up && v > m_up) { m_up = v; i_up = k; }
      if (in_low && v < m_low) { m_low = v; i_low = k; }
    }
    sol.kkt_residual = (i_up < n && i_low < n) ? m_up - m_low : 0.0;
    if (i_up == n || i_low == n || sol.kkt_residual < tol) break;

    const std::size_t i = i_up, j = i_low;
    const double quad = std::max(gram_matrix[i][i] + gram_matrix[j][j] - 2.0 * gram_matrix[i][j], 1e-12);
    double t = (m_up - m_low) / quad;
    // clip to keep alpha_i + y_i t and alpha_j - y_j t inside [0, box]
    auto clip_hi = [&](double cur, int y, bool plus_dir) {
      // bounds on t from one coordinate moving as cur + (plus_dir? y : -y) t
      const double dir = plus_dir ? double(y) : -double(y);
      double lo = -kPosInf, hi = kPosInf;
      if (dir > 0) { lo = -cur / dir; hi = boxed ? (box - cur) / dir : kPosInf; }
      else { hi = -cur / dir; lo = boxed ? (box - cur) / dir : -kPosInf; }
      return std::pair<double, double>(lo, hi);
    };
    auto [lo1, hi1] = clip_hi(alpha[i], labels[i], true);
    auto [lo2, hi2] = clip_hi(alpha[j], labels[j], false);
    t = std::min({t, hi1, hi2});
    t = std::max({t, lo1, lo2});
    if (t == 0.0) break;
    const double dai = labels[i] * t, daj = -labels[j] * t;
    alpha[i] += dai;
    alpha[j] += daj;
    sum_alpha += dai + daj;
    for (std::size_t k = 0; k < n; ++k)
      f[k] += t * (gram_matrix[i][k] - gram_matrix[j][k]);

    if (!boxed && sum_alpha > 1e10) {  // norm divergence: dual unbounded below
      sol.status = SvmStatus::Inseparable;
      break;
    }
    if ((it & 1023) == 1023) {
      double obj = -2.0 * sum_alpha;
      for (std::size_t k = 0; k < n; ++k) obj += alpha[k] * labels[k] * f[k];
      if (prev_obj != 0.0 && prev_obj - obj < 1e-12 && sol.kkt_residual > tol && !boxed &&
          sum_alpha > 1e6) {
        sol.status = SvmStatus::Inseparable;
        break;
      }
      prev_obj = obj;
    }
  }

  sol.alpha = alpha;
  sol.scores = f;
  double w2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) w2 += alpha[k] * labels[k] * f[k];
  sol.objective = w2 - 2.0 * sum_alpha;
  sol.margin = w2 > 0.0 ? 1.0 / std::sqrt(w2) : 0.0;
  double max_alpha = 0.0;
  for (double a : alpha) max_alpha = std::max(max_alpha, a);
  for (std::size_t k = 0; k < n; ++k)
    if (alpha[k] > 1e-7 * max_alpha && alpha[k] > 0.0) sol.support_set.push_back(k);

  if (sol.status == SvmStatus::Inseparable) return sol;

  // b*: an interior multiplier pins it; otherwise the active positive class.
  double b_acc = 0.0;
  std::size_t b_cnt = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (alpha[k] > 1e-7 * max_alpha && (!boxed || alpha[k] < box * (1.0 - 1e-9))) {
      b_acc += f[k] - labels[k];
      ++b_cnt;
    }
  if (b_cnt > 0) {
    sol.bias = b_acc / double(b_cnt);
  } else {
    double sup = -kPosInf;
    for (std::size_t k = 0; k < n; ++k)
      if (alpha[k] > 0.0 && labels[k] == 1) sup = std::max(sup, f[k] - 1.0);
    sol.bias = sup;
  }
  return sol;
}

// sign(sum alpha_i y_i K(x_i, x) - b*), with the raw score exposed.
inline double svm_score(const Kernel& kernel, const DualSolution& sol,
                        const std::vector<Point>& training_points, const std::vector<int>& labels,
                        const Point& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < training_points.size(); ++i)
    if (sol.alpha[i] != 0.0) s += sol.alpha[i] * labels[i] * kernel(training_points[i], x);
  return s - sol.bias;
}

inline int svm_predict(const Kernel& kernel, const DualSolution& sol,
                       const std::vector<Point>& training_points, const std::vector<int>& labels,
                       const Point& x) {
  return svm_score(kernel, sol, training_points, labels, x) >= 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Margins and dimensions

// gamma_h of the nested margin models: gamma_{2m} = (2m-1)^{-1/2},
// gamma_{2m+1} = [2m(1 - 1/(2m+1)^2)]^{-1/2}; gamma_1 = +inf.
inline double margin_gamma(std::int64_t h) {
  if (h < 1) throw std::domain_error("margin_gamma: h must be >= 1");
  if (h == 1) return kPosInf;
  if (h % 2 == 0) return 1.0 / std::sqrt(double(h - 1));
  const double hh = double(h);
  return 1.0 / std::sqrt((hh - 1.0) * (1.0 - 1.0 / (hh * hh)));
}

// Smallest h with R gamma_h <= margin: the dimension of the tightest nested
// margin model containing the observed separator.
inline std::int64_t margin_to_dimension(double margin, double radius) {
  if (!(margin > 0.0) || !(radius > 0.0))
    throw std::domain_error("margin_to_dimension: margin and radius must be positive");
  if (std::isinf(margin)) return 1;
  for (std::int64_t h = 1;; ++h) {
    if (radius * margin_gamma(h) <= margin) return h;
  }
}

// log covering bound of the fat-shattering lemma at separation levels b >= 3:
// log[(b-1)(b-2)n] {(log((b-2)n/h)+1) h/log2 + 1} + log 2, capped by the
// trivial n log b count.
inline double fat_shattering_cover_log(std::int64_t n, std::int64_t b, std::int64_t h) {
  if (b < 3) throw std::domain_error("fat_shattering_cover_log: b must be >= 3");
  if (h < 1 || h > n) throw std::domain_error("fat_shattering_cover_log: requires 1 <= h <= n");
  const double nb = double(b - 2) * double(n);
  const double formula = std::log(double(b - 1) * nb) *
                             ((std::log(nb / double(h)) + 1.0) * double(h) / std::log(2.0) + 1.0) +
                         std::log(2.0);
  return std::min(formula, double(n) * std::log(double(b)));
}

// Tighter variant with the exact log sum_{i<=h} C(n,i)(b-2)^i in place of its
// entropy bound.
inline double fat_shattering_cover_log_exact(std::int64_t n, std::int64_t b, std::int64_t h) {
  if (b < 3) throw std::domain_error("fat_shattering_cover_log_exact: b must be >= 3");
  if (h < 1 || h > n) throw std::domain_error("fat_shattering_cover_log_exact: requires 1 <= h <= n");
  double ls = kNegInf;
  for (std::int64_t i = 1; i <= h; ++i) {
    const double lc = std::lgamma(double(n) + 1.0) - std::lgamma(double(i) + 1.0) -
                      std::lgamma(double(n - i) + 1.0) + double(i) * std::log(double(b - 2));
    ls = log_add_exp(ls, lc);
  }
  const double formula = std::log(double(b - 1) * double(b - 2) * double(n)) *
                             (ls / std::log(2.0) + 1.0) +
                         std::log(2.0);
  return std::min(formula, double(n) * std::log(double(b)));
}

// Centered feature-space radius statistic: max_i |Phi(X_i) - mean Phi|^2 from
// Gram entries alone.
inline double centered_radius_sq(const std::vector<std::vector<double>>& g) {
  const std::size_t n = g.size();
  if (n == 0) throw std::invalid_argument("centered_radius_sq: empty gram");
  double mean_all = 0.0;
  for (const auto& row : g)
    for (double v : row) mean_all += v;
  mean_all /= double(n) * double(n);
  double best = -kPosInf;
  for (std::size_t i = 0; i < n; ++i) {
    double row_mean = 0.0;
    for (double v : g[i]) row_mean += v;
    row_mean /= double(n);
    best = std::max(best, g[i][i] + mean_all - 2.0 * row_mean);
  }
  return best;
}

// Transductive margin bound for an SVM in the nested model R_h:
// penalty h log(e(k+1)N/h) + log h(h+1) - log eps.
inline TransductiveBound transductive_svm_bound(double r1, std::int64_t n, int k, std::int64_t h,
                                                double eps) {
  if (k < 1) throw std::domain_error("transductive_svm_bound: k must be >= 1");
  if (h < 1) throw std::domain_error("transductive_svm_bound: h must be >= 1");
  const double pen =
      complexity(ComplexityKind::Compression, h, n, k, eps, std::log(double(h) * double(h + 1))).value;
  const double nn = double(n);
  auto f = [&](double lam) {
    return double(k + 1) / k * -std::expm1(-lam * r1 / nn - pen / nn) / -std::expm1(-lam / nn) -
           r1 / k;
  };
  MinResult r = minimize_log_scale(f, 1.0, 10.0 * nn);
  return {r.value, r.x};
}

struct InductiveMarginBound {
  double value;
  std::int64_t h_star;
  double lambda_star;
};

// Inductive margin-quantile bound: margins[i] = y_i g_{w,b}(t_Rmax(X_i)), the
// clipped functional margins of the training points. log_nu_rmax is the prior
// mass put on the R_max atom.
inline InductiveMarginBound inductive_margin_bound(const std::vector<double>& margins, double r_max,
                                                   double log_nu_rmax, double eps, int k,
                                                   const std::vector<std::int64_t>& h_grid) {
  check_eps(eps);
  if (!(r_max > 0.0)) throw std::domain_error("inductive_margin_bound: R_max must be positive");
  if (k < 1) throw std::domain_error("inductive_margin_bound: k must be >= 1");
  if (margins.empty()) throw std::invalid_argument("inductive_margin_bound: no margins");
  const double n = double(margins.size());
  InductiveMarginBound best{kPosInf, 0, 0.0};
  for (std::int64_t h : h_grid) {
    if (h < 1) continue;
    const double thr = 4.0 * r_max * margin_gamma(h);
    double q = 0.0;
    for (double m : margins) q += double(m <= thr);
    q /= n;
    const double pen = std::log(20.0 * double(k + 1) * n) *
                           (double(h) / std::log(2.0) *
                                std::log(4.0 * std::exp(1.0) * double(k + 1) * n / double(h)) +
                            1.0) +
                       std::log(2.0 * double(h) * double(h + 1)) - std::log(eps) - log_nu_rmax;
    auto f = [&](double lam) {
      return double(k + 1) / k * -std::expm1(-lam * q / n - pen / n) / -std::expm1(-lam / n) - q / k;
    };
    MinResult r = minimize_log_scale(f, 1.0, 10.0 * n);
    if (r.value < best.value) best = {r.value, h, r.x};
  }
  return best;
}

// Hard-margin simplification at gamma = min_i y_i g(x_i) > 0.
inline double inductive_margin_bound_hard(double gamma, double radius, std::int64_t n, int k,
                                          double eps) {
  check_eps(eps);
  if (!(gamma > 0.0) || !(radius > 0.0))
    throw std::domain_error("inductive_margin_bound_hard: gamma, R must be positive");
  const double nn = double(n);
  const double g2 = gamma * gamma, r2 = radius * radius;
  const double inner = (16.0 * r2 + 2.0 * g2) / (std::log(2.0) * g2) *
                           std::log(std::exp(1.0) * double(k + 1) * nn * g2 / (4.0 * r2)) +
                       1.0;
  return double(k + 1) / k *
         -std::expm1(-std::log(20.0 * double(k + 1) * nn) / nn * inner + std::log(eps / 2.0) / nn);
}

// Verifies h(half-spaces in R^d) = d+1 by exhaustive labeling with an LP
// feasibility oracle: the simplex-plus-center configuration of d+1 points is
// shattered, and no labeling extension to d+2 points survives. Supported up
// to d = 4 (exhaustive mode).
inline int halfspace_vc_check(int d, int extra_random_configs = 3) {
  if (d < 1 || d > 4) throw std::domain_error("halfspace_vc_check: exhaustive mode supports 1 <= d <= 4");
  // d+1 points: origin plus unit vectors; every labeling must be separable.
  std::vector<Point> pts(std::size_t(d) + 1, Point(d, 0.0));
  for (int j = 0; j < d; ++j) pts[std::size_t(j) + 1][j] = 1.0;
  const std::size_t m = pts.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    std::vector<int> labels(m);
    for (std::size_t i = 0; i < m; ++i) labels[i] = (mask >> i & 1) ? 1 : -1;
    if (!detail::lp_separable(pts, labels))
      throw std::runtime_error("halfspace_vc_check: simplex-plus-center labeling unexpectedly inseparable");
  }
  // d+2 points: add the centroid; some labeling must be infeasible, and the
  // same must hold for a few pseudo-random configurations (Radon).
  auto has_unshatterable = [&](const std::vector<Point>& cfg) {
    const std::size_t mm = cfg.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << mm); ++mask) {
      std::vector<int> labels(mm);
      for (std::size_t i = 0; i < mm; ++i) labels[i] = (mask >> i & 1) ? 1 : -1;
      if (!detail::lp_separable(cfg, labels)) return true;
    }
    return false;
  };
  std::vector<Point> cfg = pts;
  Point centroid(d, 0.0);
  for (const auto& p : pts)
    for (int j = 0; j < d; ++j) centroid[j] += p[j] / double(m);
  cfg.push_back(centroid);
  if (!has_unshatterable(cfg))
    throw std::runtime_error("halfspace_vc_check: d+2 point set unexpectedly shattered");
  std::uint64_t state = 0x9e3779b97f4a7c15ull + std::uint64_t(d);
  auto next_unit = [&]() {
    state ^= state << 13; state ^= state >> 7; state ^= state << 17;
    return double(state % 20011) / 20011.0 * 2.0 - 1.0;
  };
  for (int c = 0; c < extra_random_configs; ++c) {
    std::vector<Point> rnd(std::size_t(d) + 2, Point(d));
    for (auto& p : rnd)
      for (int j = 0; j < d; ++j) p[j] = next_unit();
    if (!has_unshatterable(rnd))
      throw std::runtime_error("halfspace_vc_check: random d+2 point set unexpectedly shattered");
  }
  return d + 1;
}

}  // namespace pacbayes
