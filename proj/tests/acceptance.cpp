// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-10 replay the published worked numbers through the
// shared registry; 11-16 are the property gates; 17 is the scope disclosure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pacbayes/pacbayes.hpp"

using namespace pacbayes;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("[%s] %2d. %s%s%s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!pass) ++failures;
}

bool run_registry(const std::string& id, std::string& detail) {
  for (const auto& rc : paper_examples()) {
    if (rc.id != id) continue;
    bool ok = true;
    for (const auto& c : rc.run()) {
      if (!c.pass()) {
        ok = false;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s expected %.6g got %.6g (tol %.2g); ", c.name.c_str(),
                      c.expected, c.computed, c.tol);
        detail += buf;
      }
    }
    if (ok) detail = "all checks within tolerance";
    return ok;
  }
  detail = "registry id missing";
  return false;
}

void registry_criterion(int idx, const std::string& name, const std::vector<std::string>& ids) {
  std::string detail;
  bool ok = true;
  for (const auto& id : ids) {
    std::string d;
    ok = run_registry(id, d) && ok;
    if (d != "all checks within tolerance") detail += d;
  }
  report(idx, name, ok, ok ? "" : detail);
}

LabeledDataset random_threshold_dataset(std::uint32_t seed, std::size_t n, int h, int labels) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  LabeledDataset d;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(h));
    for (int j = 0; j < h; ++j) row[std::size_t(j)] = u(rng);
    d.patterns.push_back(std::move(row));
    d.labels.push_back(1 + int(rng() % std::uint32_t(labels)));
  }
  return d;
}

void criterion_threshold_product_form() {
  bool ok = true;
  std::string detail;
  int fixtures = 0;
  for (std::uint32_t seed = 0; seed < 24; ++seed) {
    const int h = 1 + int(seed % 2);
    const int labels = 2 + int(seed % 2);
    const std::size_t n = 2 + seed % 5;  // N <= 6
    const LabeledDataset d = random_threshold_dataset(seed * 13 + 1, n, h, labels);
    const ThresholdModel model = ThresholdModel::build(d, labels);
    const auto e = oracles::enumerate_threshold(d, labels);
    for (double lam : {0.0, 0.9, 7.0}) {
      const double diff = std::abs(model.log_partition(lam) - oracles::brute_log_partition(e, lam));
      if (diff > 1e-10) {
        ok = false;
        detail = "log-partition mismatch " + std::to_string(diff) + " at seed " +
                 std::to_string(seed);
      }
    }
    // prediction vectors against the refined enumeration
    std::mt19937 rng(seed + 500);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    std::vector<double> x(static_cast<std::size_t>(h));
    for (double& v : x) v = u(rng);
    const auto oracle = oracles::enumerate_threshold(d, labels, {x});
    const auto lib = model.predict(ThresholdModel::PredictMode::Gibbs, x, nullptr, 1.7);
    const auto brute = oracles::brute_gibbs_predict(oracle, 1.7, x);
    for (std::size_t y = 0; y < lib.size(); ++y)
      if (std::abs(lib[y] - brute[y]) > 1e-10) {
        ok = false;
        detail = "prediction mismatch at seed " + std::to_string(seed);
      }
    ++fixtures;
  }
  report(11, "threshold product form vs brute-force enumeration", ok && fixtures >= 20,
         ok ? std::to_string(fixtures) + " fixtures to 1e-10" : detail);
}

void criterion_analytic_risk() {
  bool ok = true;
  std::string detail;
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const FiniteHypothesisClass m = oracles::random_model(seed + 40, 25, 10);
    for (double lam : {0.1, 1.0, 10.0, 100.0}) {
      const double h = 1e-4;
      const double fd = -(m.log_partition(lam + h) - m.log_partition(lam - h)) / (2.0 * h);
      if (std::abs(fd - m.gibbs_risk(lam)) > 1e-6) {
        ok = false;
        detail = "finite model seed " + std::to_string(seed);
      }
    }
  }
  const LabeledDataset d = random_threshold_dataset(7, 6, 2, 2);
  const ThresholdModel t = ThresholdModel::build(d, 2);
  for (double lam : {0.1, 1.0, 10.0, 100.0}) {
    const double h = 1e-5;
    const double fd = -(t.log_partition(lam + h) - t.log_partition(lam - h)) / (2.0 * h);
    if (std::abs(fd - t.gibbs_risk(lam)) > 1e-6) {
      ok = false;
      detail = "threshold model at lambda " + std::to_string(lam);
    }
  }
  report(12, "analytic Gibbs risk = -d(logZ)/dlambda to 1e-6", ok, detail);
}

void criterion_exchange_and_dimension() {
  bool ok = true;
  std::string detail;
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const FiniteHypothesisClass m = oracles::random_model(seed + 600, 20, 8);
    const double l1 = 2.0 + seed % 5, l2 = 9.0 + seed % 7;
    const double gap = (l2 - l1) * (m.gibbs_risk(l1) - m.gibbs_risk(l2));
    if (gap < -1e-12) {
      ok = false;
      detail = "exchange lemma violated at seed " + std::to_string(seed);
    }
    if (m.empirical_dimension() > m.log_inv_minimizer_mass() + 1e-9) {
      ok = false;
      detail = "dimension ceiling violated at seed " + std::to_string(seed);
    }
  }
  report(13, "exchange lemma and d_e <= -log pi(r = min) on 50 models", ok, detail);
}

void criterion_svm_margin() {
  bool ok = true;
  std::string detail;
  std::mt19937 rng(64);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  int fixtures = 0;
  for (std::uint32_t seed = 0; fixtures < 10 && seed < 100; ++seed) {
    const std::size_t n = 4 + seed % 7;
    std::vector<Point> pts(n, Point(2 + seed % 2));
    for (auto& p : pts)
      for (double& v : p) v = g(rng);
    std::vector<int> y(n);
    bool both = false;
    for (std::size_t i = 0; i < n; ++i) y[i] = coin(rng) ? 1 : -1;
    both = std::count(y.begin(), y.end(), 1) > 0 && std::count(y.begin(), y.end(), -1) > 0;
    if (!both) continue;
    const DualSolution sol = solve_dual(gram(Kernel::linear(), pts), y);
    if (sol.status != SvmStatus::Separable) continue;
    const double oracle = oracles::min_norm_hull_distance(pts, y) / 2.0;
    if (oracle <= 1e-9) continue;
    if (std::abs(sol.margin - oracle) > 1e-6) {
      ok = false;
      detail = "margin vs min-norm oracle differs by " + std::to_string(sol.margin - oracle);
    }
    // support-set retraining reproduces predictions on a probe grid
    std::vector<Point> sv;
    std::vector<int> svy;
    for (std::size_t i : sol.support_set) {
      sv.push_back(pts[i]);
      svy.push_back(y[i]);
    }
    const DualSolution again = solve_dual(gram(Kernel::linear(), sv), svy);
    for (int p = 0; p < 100; ++p) {
      Point x(pts[0].size());
      for (double& v : x) v = g(rng);
      if (svm_predict(Kernel::linear(), again, sv, svy, x) !=
          svm_predict(Kernel::linear(), sol, pts, y, x)) {
        ok = false;
        detail = "support-set retraining changed a probe decision";
      }
    }
    ++fixtures;
  }
  // regular simplex equality Var/gamma^2 = n-1
  for (std::size_t n : {2u, 4u, 6u}) {
    std::vector<Point> pts(n, Point(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) pts[i][i] = 1.0;
    double gamma = kPosInf;
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << n); ++mask) {
      std::vector<int> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = (mask >> i & 1) ? 1 : -1;
      gamma = std::min(gamma, solve_dual(gram(Kernel::linear(), pts), y).margin);
    }
    const double var = 1.0 - 1.0 / double(n);
    if (std::abs(var / (gamma * gamma) - double(n - 1)) > 1e-6) {
      ok = false;
      detail = "simplex equality failed at n = " + std::to_string(n);
    }
  }
  report(14, "SVM margin = half hull distance; retraining; simplex equality",
         ok && fixtures >= 8, ok ? "" : detail);
}

void criterion_halfspace_vc() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    ok = halfspace_vc_check(1) == 2 && halfspace_vc_check(2) == 3 && halfspace_vc_check(3) == 4;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 10.0) {
    ok = false;
    detail += " runtime " + std::to_string(secs) + "s exceeds 10s";
  }
  report(15, "half-space VC dimension d+1 for d in {1,2,3} (LP oracle)", ok, detail);
}

FiniteHypothesisClass certificate_model() {
  const std::size_t n = 200, h = 10;
  std::vector<std::vector<std::uint8_t>> rows(n, std::vector<std::uint8_t>(h, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      if (j == 0)
        rows[i][j] = std::uint8_t(i < n / 20);
      else
        rows[i][j] = std::uint8_t((i * 7 + j * 13) % 20 < 9);
    }
  return FiniteHypothesisClass::from_loss_matrix(rows, std::vector<double>(h, 1.0));
}

void criterion_effective_temperature() {
  bool ok = true;
  std::string detail;
  const FiniteHypothesisClass m = certificate_model();
  const NuAtoms nu = NuAtoms::geometric(double(m.n_points()), 2.0);
  const PosteriorWeights rho = m.gibbs(16.0);
  const TemperatureEstimate est = effective_temperature(m, 0.5, rho, nu);
  if (!(est.beta_hat > 0.0)) {
    ok = false;
    detail = "no certificate fired on the engineered model";
  } else {
    const GibbsComparisonResult re = gibbs_comparison(m, 0.5, nu, rho, est.beta_hat, est.gamma_star);
    if (!(re.b <= 0.0)) {
      ok = false;
      detail = "witness re-verification failed: B = " + std::to_string(re.b);
    }
  }
  double prev = -1.0;
  for (double eps : {0.05, 0.2, 0.5, 0.9}) {
    const double bh = effective_temperature(m, eps, rho, nu).beta_hat;
    if (bh < prev) {
      ok = false;
      detail = "beta-hat not monotone in eps";
    }
    prev = bh;
  }
  report(16, "effective temperature certificate re-verifies; monotone in eps", ok,
         ok ? "beta_hat = " + std::to_string(est.beta_hat) : detail);
}

}  // namespace

int main() {
  registry_criterion(1, "basic deviation 0.2402 at lambda* = 234", {"basic-0.2402"});
  registry_criterion(2, "optimized unbiased <= 0.2604 < sqrt form >= 0.2622", {"unbiased-0.2604"});
  registry_criterion(3, "non-random local bound 0.373", {"nonrandom-local-0.373"});
  registry_criterion(4, "local deviation 0.332 / 0.372 / corollary 0.475", {"local-deviation-0.332"});
  {
    // the exact root-form value is 0.09547631; the published 0.096 only
    // reproduces with a rounded intermediate. Kept as specified: see the
    // reviewer notes for the analysis.
    std::string detail;
    const bool ok = run_registry("relative-root-0.096", detail);
    report(5, "relative nonlinear root 0.096 +- 5e-4", ok, detail);
  }
  registry_criterion(6, "transductive 0.4093 (k 15..17), 0.539 at k = 1", {"transductive-0.4093"});
  registry_criterion(7, "equal-size shadow 0.5033 and exchangeable 0.4450",
                     {"transductive-k1-0.5033", "exchangeable-0.4450"});
  registry_criterion(8, "inductive 0.4211 (k*=15), Gaussian 0.4325, grid 0.4271",
                     {"inductive-0.4211", "inductive-gaussian-0.4325", "inductive-grid-0.4271"});
  registry_criterion(9, "i.i.d. k=1 family 0.453 / 0.461 / 0.610 and ordering",
                     {"inductive-k1-0.453", "inductive-k1-gaussian-0.461", "vapnik-classical",
                      "bound-ordering"});
  registry_criterion(10, "d'' slack registry 3.7 / 4.4 / 4.7", {"slack-registry"});

  criterion_threshold_product_form();
  criterion_analytic_risk();
  criterion_exchange_and_dimension();
  criterion_svm_margin();
  criterion_halfspace_vc();
  criterion_effective_temperature();

  report(17, "scope disclosure", true,
         "asymptotic-adaptivity statements with unspecified universal constants are not "
         "numerically reproducible and are covered only by the property suites above");

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
