#pragma once

// The registry of published worked examples: every expected value and its
// tolerance lives here, shared verbatim by the `repro` CLI subcommand and by
// the acceptance suite, so there is exactly one source of truth.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pacbayes/local_bounds.hpp"
#include "pacbayes/nonlocal_bounds.hpp"
#include "pacbayes/relative_bounds.hpp"
#include "pacbayes/transductive_vapnik.hpp"

namespace pacbayes {

enum class CheckMode { TwoSided, AtMost, AtLeast };

struct CheckResult {
  std::string name;
  double expected;
  double computed;
  double tol;
  CheckMode mode;

  bool pass() const {
    if (!std::isfinite(computed)) return false;
    switch (mode) {
      case CheckMode::TwoSided: return std::abs(computed - expected) <= tol;
      case CheckMode::AtMost: return computed <= expected + tol;
      case CheckMode::AtLeast: return computed >= expected - tol;
    }
    return false;
  }
};

struct ReproCase {
  std::string id;
  std::string anchor;  // which published bound the numbers come from
  std::function<std::vector<CheckResult>()> run;
};

namespace detail {
inline ScalarBoundQuery benchmark_query() {
  ScalarBoundQuery q;
  q.n = 1000;
  q.q = 0.2;
  q.d = 10.0;
  q.eps = 0.01;
  return q;
}
inline VapnikQuery benchmark_vapnik() {
  VapnikQuery q;
  q.n = 1000;
  q.r1 = 0.2;
  q.h = 10;
  q.eps = 0.01;
  return q;
}
}  // namespace detail

inline const std::vector<ReproCase>& paper_examples() {
  static const std::vector<ReproCase> cases = [] {
    std::vector<ReproCase> v;

    v.push_back({"basic-0.2402", "deviation bound (thm2.7)", [] {
      ScalarBoundQuery q = detail::benchmark_query();
      q.d = 0.0;
      const OptimizedBound b = optimized_deviation_bound(q, 0.0);
      return std::vector<CheckResult>{
          {"value", 0.2402, b.value, 5e-4, CheckMode::TwoSided},
          {"lambda_star", 234.0, b.lambda_star, 2.0, CheckMode::TwoSided}};
    }});

    v.push_back({"unbiased-0.2604", "optimized unbiased bound (thm1.6) vs sqrt form (thm1.1.6)", [] {
      const ScalarBoundQuery q = detail::benchmark_query();
      const OptimizedBound ob = optimized_unbiased_bound(q);
      const double sb = sqrt_bound(q);
      return std::vector<CheckResult>{
          {"optimized", 0.2604, ob.value, 5e-4, CheckMode::AtMost},
          {"sqrt", 0.2622, sb, 5e-4, CheckMode::AtLeast},
          {"ordering(sqrt-optimized)", 0.0, sb - ob.value, 0.0, CheckMode::AtLeast}};
    }});

    v.push_back({"nonrandom-local-0.373", "non-random local bound (eq1.1.7)", [] {
      const double b = nonrandom_local_bound(10.0, 0.2, 0.0, 1000.0);
      return std::vector<CheckResult>{{"value", 0.373, b, 1e-3, CheckMode::TwoSided}};
    }});

    v.push_back({"local-deviation-0.332", "local deviation bound (thm1.1.17) and its corollary", [] {
      const DimensionSurrogate s{10.0, 0.2, 1000.0};
      const LocalDeviation ld = local_deviation_surrogate(s, 0.01, 0.5, 0.1);
      const double cor = local_deviation_corollary_surrogate(s, 0.01, 100.0);
      return std::vector<CheckResult>{
          {"nonlinear", 0.332, ld.nonlinear, 2e-3, CheckMode::TwoSided},
          {"linear", 0.372, ld.linear, 2e-3, CheckMode::TwoSided},
          {"corollary-beta100", 0.475, cor, 2e-3, CheckMode::TwoSided}};
    }});

    v.push_back({"relative-root-0.096", "relative deviation nonlinear root", [] {
      const double r = relative_root(0.5, 0.2, 0.1);
      return std::vector<CheckResult>{{"value", 0.096, r, 5e-4, CheckMode::TwoSided}};
    }});

    v.push_back({"transductive-0.4093", "transductive bound (thm2.1.5), k in {15,16,17}", [] {
      const VapnikQuery q = detail::benchmark_vapnik();
      std::vector<CheckResult> out;
      const double lam_expect[3] = {965.0, 968.0, 971.0};
      for (int k = 15; k <= 17; ++k) {
        const TransductiveBound b = transductive_bound(q, k);
        out.push_back({"value(k=" + std::to_string(k) + ")", 0.4093, b.value, 5e-4,
                       CheckMode::TwoSided});
        out.push_back({"lambda_star(k=" + std::to_string(k) + ")", lam_expect[k - 15],
                       b.lambda_star, 3.0, CheckMode::TwoSided});
      }
      const TransductiveBound b1 = transductive_bound(q, 1);
      out.push_back({"value(k=1)", 0.539, b1.value, 1e-3, CheckMode::TwoSided});
      return out;
    }});

    v.push_back({"transductive-k1-0.5033", "equal-size shadow bound (thm2.2.5)", [] {
      const TransductiveBound b = transductive_bound_k1(detail::benchmark_vapnik());
      return std::vector<CheckResult>{{"value", 0.5033, b.value, 1e-3, CheckMode::TwoSided}};
    }});

    v.push_back({"exchangeable-0.4450", "exchangeable k=1 corollary", [] {
      const TransductiveBound b = exchangeable_bound(detail::benchmark_vapnik());
      return std::vector<CheckResult>{{"value", 0.4450, b.value, 1e-3, CheckMode::TwoSided}};
    }});

    v.push_back({"inductive-0.4211", "inductive shadow-sample bound (thm2.3.3)", [] {
      const InductiveBound b = inductive_bound(detail::benchmark_vapnik());
      return std::vector<CheckResult>{
          {"value", 0.4211, b.value, 5e-4, CheckMode::TwoSided},
          {"k_star", 15.0, double(b.k_star), 0.0, CheckMode::TwoSided},
          {"lambda_star", 1010.0, b.lambda_star, 5.0, CheckMode::TwoSided}};
    }});

    v.push_back({"inductive-gaussian-0.4325", "Gaussian approximation (cor2.3.7)", [] {
      const InductiveBound b = inductive_bound_gaussian(detail::benchmark_vapnik());
      return std::vector<CheckResult>{
          {"value", 0.4325, b.value, 1e-3, CheckMode::TwoSided},
          {"k_star", 15.0, double(b.k_star), 0.0, CheckMode::TwoSided}};
    }});

    v.push_back({"inductive-grid-0.4271", "weighted-grid variant, alpha = 1.1", [] {
      const InductiveBound b = inductive_bound_grid(detail::benchmark_vapnik());
      return std::vector<CheckResult>{
          {"value", 0.4271, b.value, 1e-3, CheckMode::TwoSided},
          {"k_star", 16.0, double(b.k_star), 0.0, CheckMode::TwoSided}};
    }});

    v.push_back({"inductive-k1-0.453", "i.i.d. k=1 exact bound (thm2.3.9)", [] {
      const InductiveK1Bound b = inductive_bound_k1_iid(detail::benchmark_vapnik());
      return std::vector<CheckResult>{
          {"value", 0.453, b.exact, 1e-3, CheckMode::TwoSided},
          {"lambda_star", 1195.0, b.lambda_star, 10.0, CheckMode::TwoSided}};
    }});

    v.push_back({"inductive-k1-gaussian-0.461", "i.i.d. k=1 Gaussian form (cor2.3.10)", [] {
      const InductiveK1Bound b = inductive_bound_k1_iid(detail::benchmark_vapnik());
      return std::vector<CheckResult>{{"value", 0.461, b.gaussian, 1e-3, CheckMode::TwoSided}};
    }});

    v.push_back({"vapnik-classical", "classical Vapnik bound", [] {
      const double b = vapnik_classical(detail::benchmark_vapnik());
      return std::vector<CheckResult>{{"value", 0.610, b, 1e-3, CheckMode::TwoSided}};
    }});

    v.push_back({"bound-ordering", "benchmark ordering across the bound family", [] {
      const VapnikQuery q = detail::benchmark_vapnik();
      const double a = inductive_bound(q).value;
      const InductiveK1Bound k1 = inductive_bound_k1_iid(q);
      const double d = vapnik_classical(q);
      return std::vector<CheckResult>{
          {"thm2.3.3<thm2.3.9", 0.0, k1.exact - a, 0.0, CheckMode::AtLeast},
          {"thm2.3.9<cor2.3.10", 0.0, k1.gaussian - k1.exact, 0.0, CheckMode::AtLeast},
          {"cor2.3.10<vapnik", 0.0, d - k1.gaussian, 0.0, CheckMode::AtLeast}};
    }});

    v.push_back({"slack-registry", "eta-sequence slack constants", [] {
      return std::vector<CheckResult>{
          {"slack(1e3)", 3.7, dpp_slack(1000), 0.0, CheckMode::TwoSided},
          {"slack(1e6)", 4.4, dpp_slack(1000000), 0.0, CheckMode::TwoSided},
          {"slack(1e9)", 4.7, dpp_slack(1000000000), 0.0, CheckMode::TwoSided}};
    }});

    return v;
  }();
  return cases;
}

}  // namespace pacbayes
