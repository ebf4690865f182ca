#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "pacbayes/local_bounds.hpp"

using namespace pacbayes;

TEST_CASE("local unbiased: no localization at beta = 0, bracket, factors") {
  const FiniteHypothesisClass m = oracles::random_model(21, 60, 15);
  const LocalUnbiased b0 = local_unbiased(m, 0.0);
  CHECK(b0.tight == Catch::Approx(m.gibbs_risk(0.0)).margin(1e-12));

  const double beta = 8.0;
  const LocalUnbiased b = local_unbiased(m, beta);
  CHECK(b.lower == Catch::Approx(m.gibbs_risk(beta)).margin(1e-12));
  CHECK(b.lower <= b.tight + 1e-12);
  CHECK(b.tight <= b.simple + 1e-9);

  // multiplicative factor comparison: the localized (1 - 2 beta/N)^{-1} grows
  // faster than the non-local (1 - beta/2N)^{-1}
  const double n = double(m.n_points());
  for (double bb = 1.0; bb < n / 2.0; bb *= 1.7) {
    CHECK(1.0 / (1.0 - 2.0 * bb / n) >= 1.0 / (1.0 - bb / (2.0 * n)) - 1e-12);
    // and the simple corollary factor dominates the optimized tight form
    const LocalUnbiased lb = local_unbiased(m, bb);
    CHECK(lb.tight <= lb.simple + 1e-9);
  }
  CHECK_THROWS_AS(local_unbiased(m, double(m.n_points())), std::domain_error);
}

TEST_CASE("local deviation: paper surrogate numbers") {
  const DimensionSurrogate s{10.0, 0.2, 1000.0};
  const LocalDeviation ld = local_deviation_surrogate(s, 0.01, 0.5, 0.1);
  CHECK(ld.nonlinear == Catch::Approx(0.332).margin(2e-3));
  CHECK(ld.linear == Catch::Approx(0.372).margin(2e-3));
  CHECK(ld.nonlinear <= ld.linear);
  CHECK(local_deviation_corollary_surrogate(s, 0.01, 100.0) == Catch::Approx(0.475).margin(2e-3));
}

TEST_CASE("local deviation: exact model path, degenerate cases") {
  const FiniteHypothesisClass m = oracles::random_model(5, 50, 12);
  const LocalDeviation ld = local_deviation(m, 0.05, 0.4, 0.08);
  CHECK(ld.nonlinear <= ld.linear + 1e-12);
  CHECK(ld.linear == ld.m_value);

  // M = 0 forces both bounds to 0 (integral chosen to cancel the penalty)
  const LocalDeviation zero =
      local_deviation_from_integral(2.0 * std::log(0.05), 0.0, 0.05, 0.4, 0.1, 100.0);
  CHECK(zero.linear == Catch::Approx(0.0).margin(1e-14));
  CHECK(zero.nonlinear == Catch::Approx(0.0).margin(1e-14));

  // gamma -> 0 joins the gamma = 0 evaluation continuously
  const LocalDeviation g0 = local_deviation(m, 0.05, 0.4, 0.0);
  const LocalDeviation geps = local_deviation(m, 0.05, 0.4, 1e-12);
  CHECK(std::abs(g0.linear - geps.linear) <= 1e-9);
  CHECK_THROWS_AS(local_deviation(m, 0.05, 0.4, 0.5), std::domain_error);
  CHECK_THROWS_AS(local_deviation_corollary(m, 0.05, 490.0), std::domain_error);
}

TEST_CASE("non-random local bound") {
  CHECK(nonrandom_local_bound(10.0, 0.2, 0.0, 1000.0) == Catch::Approx(0.373).margin(1e-3));

  const FiniteHypothesisClass m = oracles::random_model(9, 40, 12);
  // constant oracle risk: d_eta = 0 and the bound collapses to R + eta
  OracleRisk flat{std::vector<double>(12, 0.3)};
  const NonrandomLocal c = nonrandom_local(m, flat, 0.05);
  CHECK(c.d_eta == Catch::Approx(0.0).margin(1e-12));
  CHECK(c.bound == Catch::Approx(0.35).margin(1e-12));

  // d_eta is nonincreasing in eta and respects the prior-mass ceiling
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const FiniteHypothesisClass r = oracles::random_model(seed + 50, 30, 10);
    OracleRisk oracle{std::vector<double>(10)};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& v : oracle.risk_values) v = u(rng);
    double prev = kPosInf;
    for (double eta : {0.0, 0.05, 0.2}) {
      const NonrandomLocal nl = nonrandom_local(r, oracle, eta);
      CHECK(nl.d_eta <= prev + 1e-12);
      prev = nl.d_eta;
      // ceiling: d_eta <= -log pi(R <= essinf + eta)
      double essinf = kPosInf, mass = 0.0;
      for (std::size_t j = 0; j < 10; ++j) essinf = std::min(essinf, oracle.risk_values[j]);
      for (std::size_t j = 0; j < 10; ++j)
        if (oracle.risk_values[j] <= essinf + eta)
          mass += std::exp(r.prior_log_weight(j));
      CHECK(nl.d_eta <= -std::log(mass) + 1e-9);
    }
  }
}

namespace {
FiniteHypothesisClass with_submodels(std::uint32_t seed, std::size_t n, std::size_t h,
                                     const std::vector<int>& index) {
  FiniteHypothesisClass m = oracles::random_model(seed, n, h);
  m.set_submodel_index(index);
  return m;
}
}  // namespace

TEST_CASE("partially local: single submodel reduces to the local deviation bound") {
  FiniteHypothesisClass m = with_submodels(33, 40, 8, std::vector<int>(8, 0));
  const PartiallyLocal pl = partially_local(m, 0.02, 0.5, 0.1);
  const LocalDeviation ld = local_deviation(m, 0.02, 0.5, 0.1);
  CHECK(pl.b2 == Catch::Approx(ld.linear).margin(1e-10));
  CHECK(pl.nonlinear == Catch::Approx(ld.nonlinear).margin(1e-10));
}

TEST_CASE("partially local: duplicated submodel costs exactly log 2 under a Dirac nu") {
  // two identical copies of the same 6-hypothesis block
  FiniteHypothesisClass base = oracles::random_model(77, 30, 6);
  std::vector<std::vector<std::uint8_t>> rows(30, std::vector<std::uint8_t>(12));
  std::vector<double> w(12);
  for (std::size_t j = 0; j < 6; ++j) {
    w[j] = w[j + 6] = std::exp(base.prior_log_weight(j));
    for (std::size_t i = 0; i < 30; ++i)
      rows[i][j] = rows[i][j + 6] = base.loss(i, j);
  }
  FiniteHypothesisClass dup = FiniteHypothesisClass::from_loss_matrix(rows, w);
  std::vector<int> index(12, 0);
  for (std::size_t j = 6; j < 12; ++j) index[j] = 1;
  dup.set_submodel_index(index);

  FiniteHypothesisClass single = base;
  single.set_submodel_index(std::vector<int>(6, 0));

  const double eps = 0.03, alpha = 0.5, gamma = 0.1;
  const PartiallyLocal one = partially_local(single, eps, alpha, gamma);
  const PartiallyLocal dirac = partially_local(dup, eps, alpha, gamma,
                                               std::vector<double>{1.0, 0.0});
  const double n = 30.0;
  CHECK(dirac.b2 == Catch::Approx(one.b2 + 2.0 * std::log(2.0) / (n * (alpha - gamma))).margin(1e-10));
  // the optimal nu puts 1/2 on each copy and pays nothing
  const PartiallyLocal opt = partially_local(dup, eps, alpha, gamma);
  CHECK(opt.b2 == Catch::Approx(one.b2).margin(1e-10));
}

TEST_CASE("partially local: optimal nu beats the simplex grid") {
  std::vector<int> index(12);
  for (std::size_t j = 0; j < 12; ++j) index[j] = int(j % 3);
  FiniteHypothesisClass m = with_submodels(101, 50, 12, index);
  const double eps = 0.02, alpha = 0.4, gamma = 0.05;
  const PartiallyLocal opt = partially_local(m, eps, alpha, gamma);
  const PartiallyLocal unif = partially_local(m, eps, alpha, gamma,
                                              std::vector<double>{1.0, 1.0, 1.0});
  CHECK(opt.b2 <= unif.b2 + 1e-10);
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; a + b <= 10; ++b) {
      std::vector<double> nu{double(a) / 10.0, double(b) / 10.0, double(10 - a - b) / 10.0};
      if (nu[0] + nu[1] + nu[2] <= 0.0) continue;
      CHECK(opt.b2 <= partially_local(m, eps, alpha, gamma, nu).b2 + 1e-10);
    }
  CHECK_THROWS_AS(partially_local(oracles::random_model(1, 10, 4), eps, alpha, gamma),
                  std::invalid_argument);
}
