#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pacbayes/registry.hpp"
#include "pacbayes/transductive_vapnik.hpp"

using namespace pacbayes;

namespace {
VapnikQuery bench() {
  VapnikQuery q;
  q.n = 1000;
  q.r1 = 0.2;
  q.h = 10;
  q.eps = 0.01;
  return q;
}
}  // namespace

TEST_CASE("complexity terms") {
  CHECK(complexity(ComplexityKind::Vc, 10, 1000, 16, 0.01).value ==
        Catch::Approx(88.99).margin(0.02));
  CHECK(complexity(ComplexityKind::Compression, 10, 1000, 1, 1.0).value ==
        Catch::Approx(62.98).margin(0.02));
  CHECK(complexity(ComplexityKind::User, 0, 1000, 1, 1.0).value == 0.0);
  CHECK_THROWS_AS(complexity(ComplexityKind::Vc, 5000, 100, 1, 0.01), std::domain_error);
}

TEST_CASE("published worked examples all reproduce (registry)") {
  for (const auto& rc : paper_examples()) {
    if (rc.id == "relative-root-0.096") continue;  // documented paper rounding defect
    for (const auto& check : rc.run()) {
      INFO(rc.id << " / " << check.name << " expected " << check.expected << " computed "
                 << check.computed);
      CHECK(check.pass());
    }
  }
}

TEST_CASE("transductive bound degenerate limit and k1 refinement ordering") {
  VapnikQuery q = bench();
  q.h = 0;
  q.r1 = 0.0;
  q.eps = 1.0 - 1e-12;
  CHECK(transductive_bound(q, 3).value == Catch::Approx(0.0).margin(1e-9));
  CHECK(transductive_bound_k1(q).value == Catch::Approx(0.0).margin(1e-9));

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    VapnikQuery r;
    r.n = 200 + std::int64_t(1800 * u(rng));
    r.r1 = 0.05 + 0.4 * u(rng);
    r.h = 1 + std::int64_t(20 * u(rng));
    r.eps = 0.005 + 0.1 * u(rng);
    CHECK(transductive_bound_k1(r).value <= transductive_bound(r, 1).value + 1e-9);
  }
}

TEST_CASE("exchangeable bound r1 = 1/2 denominator simplification") {
  VapnikQuery q = bench();
  q.r1 = 0.5;
  // at r1 = 1/2 the denominator is exactly 1 at every lambda
  const double lam = double(q.n);
  const double a = a_of_lambda(lam, double(q.n));
  const double d = complexity(ComplexityKind::Vc, q.h, q.n, 1, q.eps).value;
  const double at_lam = 0.5 * (1.0 + a) + 2.0 * d / lam;
  CHECK(exchangeable_bound(q).value <= at_lam + 1e-12);
  CHECK_THROWS_AS(exchangeable_bound(q, false), std::invalid_argument);
}

TEST_CASE("inductive bound degenerate limits") {
  VapnikQuery q = bench();
  q.h = 0;
  q.r1 = 0.0;
  q.eps = 1.0 - 1e-12;
  q.slack_override = 0.0;
  q.eta_seq = {1e-300};
  q.k_grid = {1};
  // only the log k(k+1) surcharge survives; the bound is O(log 2 / N)
  CHECK(inductive_bound(q).value <= 2.0 * std::log(2.0) / double(q.n) + 1e-9);
  // k = 1 i.i.d. exact form collapses to r1
  q.r1 = 0.3;
  CHECK(inductive_bound_k1_iid(q).exact == Catch::Approx(0.3).margin(1e-5));
  CHECK_THROWS_AS(inductive_bound_k1_iid(q, false), std::invalid_argument);
  // classical form at d_V = 0
  CHECK(vapnik_classical_from_dv(0.3, 0.0, 1000.0) == Catch::Approx(0.3));
}

TEST_CASE("k optimization is a true argmin over the grid") {
  const VapnikQuery q = bench();
  const InductiveBound best = inductive_bound(q);
  for (int k : q.ks()) {
    VapnikQuery single = q;
    single.k_grid = {k};
    CHECK(best.value <= inductive_bound(single).value + 1e-12);
  }
}

TEST_CASE("Gaussian lemma dominance on grids") {
  for (double a : {0.05, 0.3, 1.0, 2.5}) {
    for (double p = 0.01; p < 0.5; p += 0.02)
      CHECK(p - phi(ExpParam(a), p) <= a / 2.0 * p * (1.0 - p) + 1e-12);
    for (double p = 0.5; p < 1.0; p += 0.02)
      CHECK(p - phi(ExpParam(a), p) <= a / 8.0 + 1e-12);
  }
}

TEST_CASE("monotonicity in h and eps; floor at r1") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    VapnikQuery q;
    q.n = 300 + std::int64_t(1200 * u(rng));
    q.r1 = 0.05 + 0.5 * u(rng);
    q.h = 2 + std::int64_t(10 * u(rng));
    q.eps = 0.005 + 0.05 * u(rng);
    VapnikQuery qh = q;
    qh.h = q.h + 3;
    CHECK(inductive_bound(qh).value >= inductive_bound(q).value - 1e-9);
    CHECK(transductive_bound(qh, 4).value >= transductive_bound(q, 4).value - 1e-9);
    VapnikQuery qe = q;
    qe.eps = std::min(0.5, q.eps * 4.0);
    CHECK(inductive_bound(qe).value <= inductive_bound(q).value + 1e-9);
    CHECK(inductive_bound(q).value >= q.r1 - 1e-9);
    CHECK(vapnik_classical(q) >= q.r1 - 1e-9);
    CHECK(inductive_bound_k1_iid(q).exact >= q.r1 - 1e-9);
  }
}

TEST_CASE("slack registry and query preconditions") {
  CHECK(dpp_slack(1000) == 3.7);
  CHECK(dpp_slack(1000000) == 4.4);
  CHECK(dpp_slack(1000000000) == 4.7);
  CHECK_THROWS_AS(dpp_slack(2000000000), std::domain_error);
  VapnikQuery q = bench();
  q.eps = 0.0;
  CHECK_THROWS_AS(inductive_bound(q), std::domain_error);
  q = bench();
  q.r1 = 1.2;
  CHECK_THROWS_AS(transductive_bound(q, 2), std::domain_error);
  CHECK_THROWS_AS(transductive_bound(bench(), 0), std::domain_error);
}
