#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pacbayes/nonlocal_bounds.hpp"

using namespace pacbayes;

namespace {
ScalarBoundQuery bench() { return {1000, 0.2, 10.0, 0.01, {}, 1.1}; }
}  // namespace

TEST_CASE("unbiased bound: coefficient bracket, zeros, stationary value") {
  ScalarBoundQuery q = bench();
  const double n = 1000.0;
  for (double lam = 1.0; lam < 1.9 * n; lam *= 1.3) {
    const double coef = lam / (n * -std::expm1(-lam / n));
    CHECK(coef >= 1.0);
    CHECK(coef <= 1.0 / (1.0 - lam / (2.0 * n)) + 1e-12);
  }
  q.q = 0.0;
  q.d = 0.0;
  CHECK(unbiased_bound(q, 100.0).tight == 0.0);
  q = bench();
  CHECK(unbiased_bound(q, 353.553).tight == Catch::Approx(0.2604).margin(5e-4));
}

TEST_CASE("optimized unbiased: paper value, d=0, grid-oracle agreement") {
  const OptimizedBound b = optimized_unbiased_bound(bench());
  CHECK(b.value <= 0.2604 + 5e-4);
  CHECK(b.value == Catch::Approx(0.26036).margin(2e-4));
  CHECK(b.lambda_star == Catch::Approx(353.553).margin(0.01));

  ScalarBoundQuery q0 = bench();
  q0.d = 0.0;
  CHECK(optimized_unbiased_bound(q0).value == Catch::Approx(0.2).margin(1e-12));

  // exhaustive grid over the tight form
  const ScalarBoundQuery q = bench();
  double grid_best = kPosInf;
  for (double lam = 1.0; lam <= 10000.0; lam *= 1.001)
    grid_best = std::min(grid_best, unbiased_bound(q, lam).tight);
  CHECK(std::abs(b.value - grid_best) <= 1e-3);
}

TEST_CASE("sqrt bound: paper value, d=0, dominates the optimized form") {
  CHECK(sqrt_bound(bench()) >= 0.2622 - 5e-4);
  ScalarBoundQuery q0 = bench();
  q0.d = 0.0;
  CHECK(sqrt_bound(q0) == Catch::Approx(0.2));
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    ScalarBoundQuery q{std::int64_t(50 + 2000 * u(rng)), 0.02 + 0.9 * u(rng), 50.0 * u(rng), 0.01};
    CHECK(sqrt_bound(q) >= optimized_unbiased_bound(q).value - 1e-12);
  }
}

TEST_CASE("deviation bound: paper value at lambda = 234 and optimized") {
  ScalarBoundQuery q = bench();
  q.d = 0.0;
  CHECK(deviation_bound(q, 0.0, 234.0).tight == Catch::Approx(0.2402).margin(5e-4));
  const OptimizedBound b = optimized_deviation_bound(q, 0.0);
  CHECK(b.value == Catch::Approx(0.2402).margin(5e-4));
  CHECK(b.lambda_star == Catch::Approx(234.0).margin(2.0));

  // eps -> 1, lambda -> 0: the bound collapses to q
  ScalarBoundQuery ql = q;
  ql.eps = 1.0 - 1e-12;
  CHECK(deviation_bound(ql, 0.0, 1e-7).tight == Catch::Approx(0.2).margin(1e-6));

  // equals the phi_inv composition
  const double lam = 777.0;
  const double expect = phi_inv(ExpParam(lam / 1000.0), 0.2 + (0.0 - std::log(0.01)) / lam);
  CHECK(deviation_bound(q, 0.0, lam).tight == Catch::Approx(expect).margin(1e-14));
  CHECK_THROWS_AS(deviation_bound(ScalarBoundQuery{1000, 0.2, 0.0, 0.0}, 0.0, 10.0),
                  std::domain_error);
}

TEST_CASE("deviation bound is unimodal: optimizer matches a dense grid scan") {
  ScalarBoundQuery q = bench();
  q.d = 0.0;
  for (double klv : {0.0, 5.0, 25.0}) {
    const OptimizedBound b = optimized_deviation_bound(q, klv);
    double grid_best = kPosInf;
    const double lo = std::log(1.0), hi = std::log(10000.0);
    for (int i = 0; i <= 100000; ++i) {
      const double lam = std::exp(lo + (hi - lo) * i / 100000.0);
      grid_best = std::min(grid_best, deviation_bound(q, klv, lam).tight);
    }
    CHECK(std::abs(b.value - grid_best) <= 1e-6);
  }
}

TEST_CASE("uniform deviation: zero-error branch, union-bound cost, grid oracle") {
  ScalarBoundQuery q = bench();
  q.d = 0.0;
  ScalarBoundQuery q0 = q;
  q0.q = 0.0;
  CHECK(uniform_deviation_bound(q0, 0.0).value ==
        Catch::Approx(-std::expm1(std::log(0.01) / 1000.0)).epsilon(1e-12));

  const UniformDeviation ub = uniform_deviation_bound(q, 10.0);
  CHECK(ub.value >= optimized_deviation_bound(q, 10.0).value - 1e-12);

  // exhaustive scan oracle (independently coded loop)
  double best = kPosInf;
  for (int k = 0;; ++k) {
    const double lam = std::pow(1.1, k);
    if (lam > 10000.0) break;
    const double pen = 10.0 - std::log(0.01) + std::log(double(k + 1) * double(k + 2));
    best = std::min(best, -std::expm1(-lam * 0.2 / 1000.0 - pen / 1000.0) /
                              -std::expm1(-lam / 1000.0));
  }
  CHECK(std::abs(ub.value - best) <= 0.02 * best);
}

TEST_CASE("empirical-dimension deviation bound") {
  // single hypothesis: reduces to the deviation bound with kl = 0
  const auto single = FiniteHypothesisClass::from_loss_matrix({{1}, {0}, {0}, {1}}, {1.0});
  const double lam = 50.0;
  const double lhs = empirical_dim_deviation(single, 0.01, lam);
  ScalarBoundQuery q{4, 0.5, 0.0, 0.01};
  CHECK(lhs == Catch::Approx(deviation_bound(q, 0.0, lam).tight).margin(1e-12));

  // at lambda = d_e the dimension term equals d_e / lambda exactly
  const FiniteHypothesisClass m = oracles::random_model(42, 30, 20);
  const double de = m.empirical_dimension();
  REQUIRE(de > 0.0);
  const double expect = phi_inv(ExpParam(de / 30.0),
                                m.min_support_risk() + 1.0 + (-std::log(0.01)) / de);
  CHECK(empirical_dim_deviation(m, 0.01, de) == Catch::Approx(expect).margin(1e-9));

  // Monte-Carlo sanity: the bound dominates the Gibbs risk it certifies
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const FiniteHypothesisClass r = oracles::random_model(seed + 300, 40, 20);
    for (double l : {1.0, 10.0, 100.0, 1000.0})
      CHECK(empirical_dim_deviation(r, 0.01, l) >= r.gibbs_risk(l) - 1e-9);
  }
}

TEST_CASE("shared invariants: monotone in eps and d, floor at q") {
  ScalarBoundQuery q = bench();
  q.d = 0.0;
  for (double e1 = 0.01; e1 < 0.5; e1 *= 2.0) {
    ScalarBoundQuery a = q, b = q;
    a.eps = e1;
    b.eps = e1 * 1.5;
    CHECK(optimized_deviation_bound(a, 3.0).value >= optimized_deviation_bound(b, 3.0).value - 1e-12);
  }
  for (double d1 : {0.0, 2.0, 8.0}) {
    CHECK(optimized_deviation_bound(q, d1 + 1.0).value >=
          optimized_deviation_bound(q, d1).value - 1e-12);
    ScalarBoundQuery a = q, b = q;
    a.d = d1;
    b.d = d1 + 1.0;
    CHECK(optimized_unbiased_bound(b).value >= optimized_unbiased_bound(a).value - 1e-12);
  }
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    ScalarBoundQuery r{std::int64_t(100 + 900 * u(rng)), 0.05 + 0.8 * u(rng), 0.0,
                       0.001 + 0.3 * u(rng)};
    CHECK(optimized_deviation_bound(r, 10.0 * u(rng)).value >= r.q - 1e-9);
  }
}

TEST_CASE("query preconditions are named errors") {
  CHECK_THROWS_AS(optimized_deviation_bound(ScalarBoundQuery{0, 0.2, 0.0, 0.01}, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(optimized_deviation_bound(ScalarBoundQuery{10, 1.5, 0.0, 0.01}, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(optimized_deviation_bound(ScalarBoundQuery{10, 0.5, 0.0, 1.0}, 0.0),
                  std::domain_error);
}
