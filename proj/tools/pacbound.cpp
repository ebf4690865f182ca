// pacbound: command-line front end for the bound library. Reproduces the
// published worked examples (`repro`), evaluates any closed-form bound on
// user inputs (`eval`), and runs the dataset pipelines (threshold-*, svm-*).
//
// Exit codes: 0 success, 1 bound precondition error, 2 ingestion error,
// 3 repro mismatch.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pacbayes/pacbayes.hpp"

namespace {

using namespace pacbayes;

int thread_cap() {
  if (const char* env = std::getenv("PACBOUND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

// ---------------------------------------------------------------------------
// repro

struct CaseOutcome {
  std::string id;
  std::vector<CheckResult> checks;
  std::string error;
};

int run_repro(const std::string& suite, const std::string& out_path) {
  std::vector<const ReproCase*> selected;
  for (const auto& c : paper_examples())
    if (suite == "all" || suite == c.id) selected.push_back(&c);
  if (selected.empty()) {
    std::cerr << "error: unknown repro suite id '" << suite << "'\n";
    return 1;
  }
  const int cap = thread_cap();
  std::vector<CaseOutcome> outcomes(selected.size());
  std::size_t next = 0;
  while (next < selected.size()) {
    std::vector<std::future<CaseOutcome>> batch;
    for (int t = 0; t < cap && next < selected.size(); ++t, ++next) {
      const ReproCase* rc = selected[next];
      batch.push_back(std::async(std::launch::async, [rc] {
        CaseOutcome o;
        o.id = rc->id;
        try {
          o.checks = rc->run();
        } catch (const std::exception& e) {
          o.error = e.what();
        }
        return o;
      }));
    }
    for (std::size_t b = 0; b < batch.size(); ++b)
      outcomes[next - batch.size() + b] = batch[b].get();
  }

  bool all_pass = true;
  nlohmann::json jout = nlohmann::json::array();
  std::printf("%-28s %-28s %12s %12s  %s\n", "id", "check", "expected", "computed", "status");
  for (const auto& o : outcomes) {
    if (!o.error.empty()) {
      all_pass = false;
      std::printf("%-28s %-28s %12s %12s  ERROR: %s\n", o.id.c_str(), "-", "-", "-", o.error.c_str());
      continue;
    }
    for (const auto& c : o.checks) {
      const bool p = c.pass();
      all_pass = all_pass && p;
      std::printf("%-28s %-28s %12.6g %12.6g  %s\n", o.id.c_str(), c.name.c_str(), c.expected,
                  c.computed, p ? "pass" : "FAIL");
      nlohmann::json jc;
      jc["id"] = o.id;
      jc["check"] = c.name;
      jc["expected"] = c.expected;
      jc["computed"] = c.computed;
      jc["pass"] = p;
      jout.push_back(jc);
    }
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    f << jout.dump(2) << '\n';
  }
  std::printf("%s\n", all_pass ? "all checks passed" : "MISMATCH: some checks failed");
  return all_pass ? 0 : 3;
}

// ---------------------------------------------------------------------------
// eval

struct EvalFlags {
  std::int64_t n = 0;
  double r = -1.0, r1 = -1.0, kl = 0.0, d = 0.0;
  std::int64_t h = 0;
  double eps = 0.0, lambda = 0.0;
  int k = 0;
  double alpha = 1.1, gamma = 0.0, beta = 0.0, eta = 0.0, kappa = 1.0, c = 1.0, x = 0.0;
  std::string out;
  long seed = 0;
};

std::string canonical_bound_id(std::string id) {
  static const std::map<std::string, std::string> aliases = {
      {"thm2.7", "deviation"},
      {"thm2.4", "unbiased"},
      {"thm1.6", "optimized-unbiased"},
      {"thm1.1.6", "sqrt"},
      {"thm1.1.11", "uniform-deviation"},
      {"eq1.1.7", "nonrandom-local"},
      {"thm1.1.17", "local-deviation"},
      {"cor1.1.23", "mammen-rate"},
      {"thm2.1.5", "transductive"},
      {"thm2.2.5", "transductive-k1"},
      {"thm2.3.3", "inductive-shadow"},
      {"cor2.3.7", "inductive-shadow-gaussian"},
      {"thm2.3.9", "inductive-k1"},
      {"cor2.3.10", "inductive-k1-gaussian"},
      {"thmVapnik", "vapnik-classical"},
  };
  const auto it = aliases.find(id);
  return it == aliases.end() ? id : it->second;
}

void emit_report(BoundReport& rep, const EvalFlags& f) {
  rep.stamp_now();
  std::printf("%s = %.6f%s", rep.bound_id.c_str(), rep.value, rep.vacuous ? " (vacuous)" : "");
  for (const auto& [k, v] : rep.optimized) std::printf("  %s=%.6g", k.c_str(), v);
  std::printf("\n");
  if (!f.out.empty()) {
    std::ofstream of(f.out);
    of << to_json(rep).dump(2) << '\n';
  }
}

int run_eval(const std::string& raw_id, const EvalFlags& f) {
  const std::string id = canonical_bound_id(raw_id);
  BoundReport rep;
  rep.bound_id = id;
  rep.paper_anchor = raw_id == id ? id : raw_id;
  auto in = [&](const char* key, double v) { rep.inputs[key] = v; };

  ScalarBoundQuery sq{f.n, f.r, f.d, f.eps, {}, f.alpha};
  VapnikQuery vq{f.n, f.r1, f.h, f.eps, {}, f.alpha, {}};

  if (id == "deviation") {
    in("n", double(f.n)); in("r", f.r); in("kl", f.kl); in("eps", f.eps);
    sq.d = 0.0;
    if (f.lambda > 0.0) {
      rep.set_value(deviation_bound(sq, f.kl, f.lambda).tight);
      rep.optimized["lambda"] = f.lambda;
    } else {
      const OptimizedBound b = optimized_deviation_bound(sq, f.kl);
      rep.set_value(b.value);
      rep.optimized["lambda_star"] = b.lambda_star;
    }
  } else if (id == "unbiased") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d); in("lambda", f.lambda);
    rep.set_value(unbiased_bound(sq, f.lambda).tight);
  } else if (id == "optimized-unbiased") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d);
    const OptimizedBound b = optimized_unbiased_bound(sq);
    rep.set_value(b.value);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "sqrt") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d);
    rep.set_value(sqrt_bound(sq));
  } else if (id == "uniform-deviation") {
    in("n", double(f.n)); in("r", f.r); in("kl", f.kl); in("eps", f.eps); in("alpha", f.alpha);
    sq.d = 0.0;
    const UniformDeviation b = uniform_deviation_bound(sq, f.kl);
    rep.set_value(b.value);
    rep.optimized["k_star"] = double(b.k_star);
  } else if (id == "nonrandom-local") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d); in("eta", f.eta);
    rep.set_value(nonrandom_local_bound(f.d, f.r, f.eta, double(f.n)));
  } else if (id == "local-deviation") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d); in("eps", f.eps);
    in("alpha", f.alpha); in("gamma", f.gamma);
    const LocalDeviation b =
        local_deviation_surrogate({f.d, f.r, double(f.n)}, f.eps, f.alpha, f.gamma);
    rep.set_value(b.nonlinear);
    rep.optimized["linear"] = b.linear;
  } else if (id == "local-corollary") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d); in("eps", f.eps); in("beta", f.beta);
    rep.set_value(local_deviation_corollary_surrogate({f.d, f.r, double(f.n)}, f.eps, f.beta));
  } else if (id == "relative-root") {
    in("lambda", f.lambda); in("beta", f.beta); in("d", f.d);
    rep.set_value(relative_root(f.lambda, f.beta, f.d));
  } else if (id == "mammen-rate") {
    in("n", double(f.n)); in("r", f.r); in("d", f.d); in("kappa", f.kappa); in("c", f.c);
    const MammenRate b = nonrandom_relative_rate(f.r, f.kappa, f.c, f.d, double(f.n));
    rep.set_value(b.bound);
    rep.optimized["lambda_bar"] = b.lambda_bar;
  } else if (id == "complexity") {
    in("n", double(f.n)); in("h", double(f.h)); in("k", double(f.k)); in("eps", f.eps);
    rep.set_value(complexity(ComplexityKind::Vc, f.h, f.n, f.k, f.eps).value);
  } else if (id == "transductive") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps); in("k", double(f.k));
    if (f.k < 1) throw std::domain_error("transductive: --k must be >= 1");
    const TransductiveBound b = transductive_bound(vq, f.k);
    rep.set_value(b.value);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "transductive-k1") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    const TransductiveBound b = transductive_bound_k1(vq);
    rep.set_value(b.value);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "exchangeable") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    const TransductiveBound b = exchangeable_bound(vq);
    rep.set_value(b.value);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "inductive-shadow") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    const InductiveBound b = inductive_bound(vq);
    rep.set_value(b.value);
    rep.optimized["k_star"] = double(b.k_star);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "inductive-shadow-gaussian") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    const InductiveBound b = inductive_bound_gaussian(vq);
    rep.set_value(b.value);
    rep.optimized["k_star"] = double(b.k_star);
  } else if (id == "inductive-shadow-grid") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps); in("alpha", f.alpha);
    const InductiveBound b = inductive_bound_grid(vq);
    rep.set_value(b.value);
    rep.optimized["k_star"] = double(b.k_star);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "inductive-k1") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    const InductiveK1Bound b = inductive_bound_k1_iid(vq);
    rep.set_value(b.exact);
    rep.optimized["lambda_star"] = b.lambda_star;
  } else if (id == "inductive-k1-gaussian") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    rep.set_value(inductive_bound_k1_iid(vq).gaussian);
  } else if (id == "vapnik-classical") {
    in("n", double(f.n)); in("h", double(f.h)); in("r1", f.r1); in("eps", f.eps);
    rep.set_value(vapnik_classical(vq));
  } else {
    std::cerr << "error: unknown bound id '" << raw_id << "'\n";
    return 1;
  }
  emit_report(rep, f);
  return 0;
}

// ---------------------------------------------------------------------------
// threshold pipelines

LabeledDataset to_threshold_dataset(const CsvData& csv) {
  LabeledDataset d;
  d.patterns = csv.features;
  d.labels = csv.labels;
  return d;
}

nlohmann::json threshold_summary_json(const ThresholdModel& model) {
  const ThresholdSummary s = model.summary();
  nlohmann::json j;
  j["cells"] = s.cell_count;
  j["counters_digest"] = s.counters_digest;
  j["min_kl"] = s.min_kl;
  j["kl_entropy_bound"] = s.kl_entropy_bound;
  j["n"] = model.n_points();
  j["h"] = model.measurements();
  j["labels"] = model.label_count();
  return j;
}

int run_threshold_train(const std::string& csv_path, int labels, const std::string& out_path) {
  const CsvData csv = load_feature_csv_file(csv_path);
  if (labels <= 0)
    for (int y : csv.labels) labels = std::max(labels, y);
  const ThresholdModel model = ThresholdModel::build(to_threshold_dataset(csv), labels);
  const nlohmann::json j = threshold_summary_json(model);
  std::cout << j.dump(2) << '\n';
  if (!out_path.empty()) {
    std::ofstream of(out_path);
    of << j.dump(2) << '\n';
  }
  return 0;
}

int run_threshold_bound(const std::string& csv_path, int labels, const std::string& bound,
                        double lambda, double eps, double alpha, double gamma,
                        const std::string& out_path) {
  const CsvData csv = load_feature_csv_file(csv_path);
  if (labels <= 0)
    for (int y : csv.labels) labels = std::max(labels, y);
  const ThresholdModel model = ThresholdModel::build(to_threshold_dataset(csv), labels);
  const std::string id = canonical_bound_id(bound);
  BoundReport rep;
  rep.bound_id = "threshold-" + id;
  rep.paper_anchor = bound;
  rep.text_inputs["csv"] = csv_path;
  rep.inputs["n"] = double(model.n_points());
  rep.inputs["h"] = double(model.measurements());
  rep.inputs["eps"] = eps;

  if (id == "deviation") {
    if (!(lambda > 0.0)) throw std::domain_error("threshold-bound: --lambda must be positive");
    const double risk = model.gibbs_risk(lambda);
    const double kl_val = -lambda * risk - model.log_partition(lambda);
    ScalarBoundQuery q{model.n_points(), risk, 0.0, eps};
    rep.inputs["lambda"] = lambda;
    rep.optimized["gibbs_risk"] = risk;
    rep.optimized["kl"] = kl_val;
    rep.set_value(deviation_bound(q, kl_val, lambda).tight);
  } else if (id == "local-deviation") {
    const double n = double(model.n_points());
    const double lam = -n * std::log1p(-alpha);
    const double beta = n * std::log1p(gamma);
    const double integral = model.log_partition(beta) - model.log_partition(lam);
    rep.inputs["alpha"] = alpha;
    rep.inputs["gamma"] = gamma;
    const LocalDeviation b = local_deviation_from_integral(integral, 0.0, eps, alpha, gamma, n);
    rep.optimized["linear"] = b.linear;
    rep.set_value(b.nonlinear);
  } else if (id == "effective-temperature") {
    const ThresholdHypothesis erm = model.erm();
    const NuAtoms nu = NuAtoms::geometric(double(model.n_points()) + 1.0, 2.0);
    const TemperatureEstimate est = effective_temperature_terms(model.comparison_terms(erm), eps, nu);
    rep.optimized["beta_hat"] = est.beta_hat;
    rep.optimized["gamma_star"] = est.gamma_star;
    rep.optimized["erm_risk"] = model.empirical_risk(erm);
    rep.set_value(est.beta_hat > 0.0 ? est.b_at_witness : 0.0);
  } else {
    std::cerr << "error: unknown threshold bound '" << bound << "'\n";
    return 1;
  }
  EvalFlags f;
  f.out = out_path;
  emit_report(rep, f);
  return 0;
}

// ---------------------------------------------------------------------------
// svm pipelines

Kernel make_kernel(const std::string& name, double width) {
  if (name == "linear") return Kernel::linear();
  if (name == "gaussian") return Kernel::gaussian(width);
  throw std::domain_error("unknown kernel '" + name + "' (use linear or gaussian)");
}

nlohmann::json svm_model_json(const DualSolution& sol, const std::string& kernel_desc) {
  nlohmann::json j;
  j["kernel"] = kernel_desc;
  j["alpha"] = sol.alpha;
  j["bias"] = sol.bias;
  j["margin"] = sol.margin;
  j["support"] = sol.support_set;
  j["objective"] = sol.objective;
  j["kkt_residual"] = sol.kkt_residual;
  switch (sol.status) {
    case SvmStatus::Separable: j["status"] = "separable"; break;
    case SvmStatus::BoxSolved: j["status"] = "box"; break;
    case SvmStatus::Inseparable: j["status"] = "inseparable"; break;
    case SvmStatus::Degenerate: j["status"] = "degenerate"; break;
  }
  return j;
}

int run_svm_train(const std::string& csv_path, const std::string& kernel_name, double width,
                  double box, const std::string& out_path) {
  const CsvData csv = load_feature_csv_file(csv_path);
  for (int y : csv.labels)
    if (y != 1 && y != -1) throw CsvError("svm labels must be +-1", 0);
  const Kernel kernel = make_kernel(kernel_name, width);
  const auto g = gram(kernel, csv.features);
  const DualSolution sol = solve_dual(g, csv.labels, box > 0.0 ? box : kPosInf);
  if (sol.status == SvmStatus::Inseparable) {
    std::cerr << "status: inseparable (hard margin requested on non-separable data)\n";
    return 1;
  }
  const nlohmann::json j = svm_model_json(sol, kernel.description());
  std::cout << j.dump(2) << '\n';
  if (!out_path.empty()) {
    std::ofstream of(out_path);
    of << j.dump(2) << '\n';
  }
  return 0;
}

int run_svm_bound(const std::string& csv_path, const std::string& mode, int k, double eps,
                  const std::string& kernel_name, double width, double box,
                  const std::string& shadow_path, std::vector<double> rmax_atoms,
                  const std::string& out_path) {
  const CsvData csv = load_feature_csv_file(csv_path);
  for (int y : csv.labels)
    if (y != 1 && y != -1) throw CsvError("svm labels must be +-1", 0);
  const Kernel kernel = make_kernel(kernel_name, width);
  const auto g = gram(kernel, csv.features);
  const DualSolution sol = solve_dual(g, csv.labels, box > 0.0 ? box : kPosInf);
  if (sol.status == SvmStatus::Inseparable) {
    std::cerr << "status: inseparable (supply --box to allow margin errors)\n";
    return 1;
  }
  const std::int64_t n = std::int64_t(csv.labels.size());
  double r1 = 0.0;
  for (std::size_t i = 0; i < csv.features.size(); ++i)
    r1 += double(svm_predict(kernel, sol, csv.features, csv.labels, csv.features[i]) != csv.labels[i]);
  r1 /= double(n);

  BoundReport rep;
  rep.text_inputs["csv"] = csv_path;
  rep.text_inputs["kernel"] = kernel.description();
  rep.inputs["n"] = double(n);
  rep.inputs["k"] = double(k);
  rep.inputs["eps"] = eps;
  rep.inputs["r1"] = r1;
  rep.optimized["margin"] = sol.margin;

  if (mode == "transductive") {
    std::vector<Point> all = csv.features;
    if (!shadow_path.empty()) {
      const CsvData shadow = load_feature_csv_file(shadow_path);
      for (const auto& row : shadow.features) all.push_back(row);
    }
    const double r2 = centered_radius_sq(gram(kernel, all));
    const std::int64_t h = margin_to_dimension(sol.margin, std::sqrt(r2));
    rep.bound_id = "svm-transductive";
    rep.inputs["h"] = double(h);
    rep.inputs["radius_sq"] = r2;
    const TransductiveBound b = transductive_svm_bound(r1, n, k, h, eps);
    rep.optimized["lambda_star"] = b.lambda_star;
    rep.set_value(b.value);
  } else if (mode == "inductive") {
    if (rmax_atoms.empty()) {
      double mx = 0.0;
      for (const auto& p : csv.features) mx = std::max(mx, std::sqrt(detail::dot(p, p)));
      rmax_atoms.push_back(mx);
    }
    const double log_nu = -std::log(double(rmax_atoms.size()));
    std::vector<std::int64_t> h_grid;
    for (std::int64_t h = 1; h <= std::min<std::int64_t>(64, n); ++h) h_grid.push_back(h);
    double best = kPosInf, best_rmax = 0.0;
    InductiveMarginBound best_b{kPosInf, 0, 0.0};
    for (double rmax : rmax_atoms) {
      std::vector<double> margins;
      for (std::size_t i = 0; i < csv.features.size(); ++i) {
        Point xc = csv.features[i];
        const double norm = std::sqrt(detail::dot(xc, xc));
        if (norm > rmax)
          for (double& v : xc) v *= rmax / norm;
        const double s = svm_score(kernel, sol, csv.features, csv.labels, xc);
        margins.push_back(csv.labels[i] * s * sol.margin);  // unit-normal functional margin
      }
      const InductiveMarginBound b = inductive_margin_bound(margins, rmax, log_nu, eps, k, h_grid);
      if (b.value < best) { best = b.value; best_rmax = rmax; best_b = b; }
    }
    rep.bound_id = "svm-inductive-margin";
    rep.inputs["rmax"] = best_rmax;
    rep.optimized["h_star"] = double(best_b.h_star);
    rep.optimized["lambda_star"] = best_b.lambda_star;
    rep.set_value(best);
  } else {
    std::cerr << "error: unknown svm-bound mode '" << mode << "'\n";
    return 1;
  }
  EvalFlags f;
  f.out = out_path;
  emit_report(rep, f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC-Bayesian and Vapnik-style generalization bound calculator"};
  app.require_subcommand(1);

  // repro
  auto* repro = app.add_subcommand("repro", "re-run the published worked examples");
  std::string suite = "all";
  std::string repro_out;
  repro->add_option("suite", suite, "example id or 'all'");
  repro->add_option("--out", repro_out, "write results as JSON");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a closed-form bound");
  std::string bound_id;
  EvalFlags ef;
  eval->add_option("bound", bound_id, "bound identifier")->required();
  eval->add_option("--n", ef.n, "sample size");
  eval->add_option("--r", ef.r, "empirical risk");
  eval->add_option("--r1", ef.r1, "observed empirical risk (shadow-sample bounds)");
  eval->add_option("--kl", ef.kl, "KL divergence (nats)");
  eval->add_option("--d", ef.d, "complexity / dimension (nats)");
  eval->add_option("--h", ef.h, "VC dimension or compression size");
  eval->add_option("--eps", ef.eps, "confidence level in (0,1)");
  eval->add_option("--lambda", ef.lambda, "exponential parameter (0 = optimize)");
  eval->add_option("--k", ef.k, "shadow sample multiplier");
  eval->add_option("--alpha", ef.alpha, "grid ratio / localization alpha");
  eval->add_option("--gamma", ef.gamma, "localization gamma");
  eval->add_option("--beta", ef.beta, "inverse temperature");
  eval->add_option("--eta", ef.eta, "margin eta");
  eval->add_option("--kappa", ef.kappa, "margin exponent");
  eval->add_option("--c", ef.c, "margin constant");
  eval->add_option("--x", ef.x, "margin-function argument");
  eval->add_option("--out", ef.out, "write the report as JSON");
  eval->add_option("--seed", ef.seed, "seed (recorded in the report)");

  // threshold-train / threshold-bound
  auto* tt = app.add_subcommand("threshold-train", "build a threshold model from CSV");
  std::string tt_csv, tt_out;
  int tt_labels = 0;
  tt->add_option("--csv", tt_csv, "dataset (features in (0,1), integer label)")->required();
  tt->add_option("--labels", tt_labels, "label count (default: max label)");
  tt->add_option("--out", tt_out, "write the model summary as JSON");

  auto* tb = app.add_subcommand("threshold-bound", "bound family on a threshold model");
  std::string tb_csv, tb_bound = "deviation", tb_out;
  int tb_labels = 0;
  double tb_lambda = 0.0, tb_eps = 0.01, tb_alpha = 0.5, tb_gamma = 0.1;
  tb->add_option("--csv", tb_csv)->required();
  tb->add_option("--labels", tb_labels);
  tb->add_option("--bound", tb_bound, "deviation | local-deviation | effective-temperature");
  tb->add_option("--lambda", tb_lambda);
  tb->add_option("--eps", tb_eps);
  tb->add_option("--alpha", tb_alpha);
  tb->add_option("--gamma", tb_gamma);
  tb->add_option("--out", tb_out);

  // svm-train / svm-bound
  auto* st = app.add_subcommand("svm-train", "train an SVM in dual form from CSV");
  std::string st_csv, st_kernel = "linear", st_out;
  double st_width = 1.0, st_box = 0.0;
  st->add_option("--csv", st_csv)->required();
  st->add_option("--kernel", st_kernel, "linear | gaussian");
  st->add_option("--width", st_width, "gaussian kernel width");
  st->add_option("--box", st_box, "box constraint (0 = hard margin)");
  st->add_option("--out", st_out);

  auto* sb = app.add_subcommand("svm-bound", "compression/margin bound for an SVM");
  std::string sb_csv, sb_mode = "transductive", sb_kernel = "linear", sb_shadow, sb_out;
  double sb_width = 1.0, sb_box = 0.0, sb_eps = 0.01;
  int sb_k = 1;
  std::vector<double> sb_rmax;
  sb->add_option("--csv", sb_csv)->required();
  sb->add_option("--mode", sb_mode, "transductive | inductive");
  sb->add_option("--k", sb_k, "shadow sample multiplier");
  sb->add_option("--eps", sb_eps);
  sb->add_option("--kernel", sb_kernel);
  sb->add_option("--width", sb_width);
  sb->add_option("--box", sb_box);
  sb->add_option("--shadow", sb_shadow, "shadow pattern CSV (transductive mode)");
  sb->add_option("--rmax", sb_rmax, "clipping radius atoms (inductive mode)");
  sb->add_option("--out", sb_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (repro->parsed()) return run_repro(suite, repro_out);
    if (eval->parsed()) return run_eval(bound_id, ef);
    if (tt->parsed()) return run_threshold_train(tt_csv, tt_labels, tt_out);
    if (tb->parsed())
      return run_threshold_bound(tb_csv, tb_labels, tb_bound, tb_lambda, tb_eps, tb_alpha,
                                 tb_gamma, tb_out);
    if (st->parsed()) return run_svm_train(st_csv, st_kernel, st_width, st_box, st_out);
    if (sb->parsed())
      return run_svm_bound(sb_csv, sb_mode, sb_k, sb_eps, sb_kernel, sb_width, sb_box, sb_shadow,
                           sb_rmax, sb_out);
  } catch (const CsvError& e) {
    std::cerr << "ingestion error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
