#pragma once

// One-dimensional search and log-space accumulation helpers shared by the
// bound evaluators. Everything here is deterministic and allocation-light.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pacbayes {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

inline double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

struct MinResult {
  double x = 0.0;
  double value = kPosInf;
};

// Golden-section minimization on [lo, hi], followed by a 3-point quadratic
// polish. The objective must be unimodal on the bracket for an exact result;
// otherwise the result is a local minimum inside the bracket.
inline MinResult golden_section_min(const std::function<double(double)>& f,
                                    double lo, double hi, int iters = 120) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_min: empty bracket");
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 0.0; ++i) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double xm = 0.5 * (a + b);
  double fm = f(xm);
  // quadratic polish through (a, xm, b)
  const double fa = f(a), fb = f(b);
  const double denom = (xm - a) * (fm - fb) - (xm - b) * (fm - fa);
  if (std::abs(denom) > 0.0) {
    const double xq = xm - 0.5 * ((xm - a) * (xm - a) * (fm - fb) -
                                  (xm - b) * (xm - b) * (fm - fa)) / denom;
    if (xq > lo && xq < hi) {
      const double fq = f(xq);
      if (fq < fm) { xm = xq; fm = fq; }
    }
  }
  return {xm, fm};
}

// Minimize f(lambda) for lambda in [lo, hi] by golden section on log(lambda).
inline MinResult minimize_log_scale(const std::function<double(double)>& f,
                                    double lo, double hi, int iters = 120) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("minimize_log_scale: bad bracket");
  auto g = [&](double t) { return f(std::exp(t)); };
  MinResult r = golden_section_min(g, std::log(lo), std::log(hi), iters);
  const double x = std::exp(r.x);
  return {x, f(x)};
}

// Solve f(x) = target for strictly increasing f on [lo, hi]: bracketed
// bisection refined by Newton steps (tolerance 1e-12, at most 200 iterations).
inline double solve_increasing(const std::function<double(double)>& f, double target,
                               double lo, double hi,
                               const std::function<double(double)>& df = nullptr,
                               double tol = 1e-12, int max_iter = 200) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo > 0.0 || fhi < 0.0)
    throw std::domain_error("solve_increasing: target outside bracket");
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    double fx = f(x) - target;
    if (std::abs(fx) <= tol && (hi - lo) <= tol * std::max(1.0, std::abs(x))) break;
    if (fx > 0.0) hi = x; else lo = x;
    double xn = quiet_nan();
    if (df) {
      const double g = df(x);
      if (g > 0.0) xn = x - fx / g;
    }
    x = (std::isfinite(xn) && xn > lo && xn < hi) ? xn : 0.5 * (lo + hi);
  }
  return x;
}

// Geometric grid {start * ratio^k : value <= stop}, always including start.
inline std::vector<double> geometric_grid(double start, double stop, double ratio) {
  if (!(start > 0.0) || !(ratio > 1.0)) throw std::invalid_argument("geometric_grid: bad parameters");
  std::vector<double> g;
  for (double v = start; v <= stop * (1.0 + 1e-12); v *= ratio) g.push_back(v);
  if (g.empty()) g.push_back(start);
  return g;
}

inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline double log_sum_exp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// Deterministic pairwise-tree log-sum-exp: the association order is fixed by
// the input order, so results are bit-identical however the terms were filled.
inline double log_sum_exp_tree(std::vector<double> v) {
  if (v.empty()) return kNegInf;
  while (v.size() > 1) {
    std::size_t half = (v.size() + 1) / 2;
    for (std::size_t i = 0; i + half < v.size(); ++i)
      v[i] = log_add_exp(v[i], v[i + half]);
    v.resize(half);
  }
  return v[0];
}

}  // namespace pacbayes
