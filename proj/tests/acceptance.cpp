// Acceptance suite: one PASS / FAIL line per criterion, nonzero exit on any
// FAIL. The PhysioNet criterion runs only when CHECKLIST_PHYSIONET_DIR names
// a directory of the public challenge files; it never affects the exit code.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "checklist/baselines.hpp"
#include "checklist/config.hpp"
#include "checklist/io.hpp"
#include "checklist/metrics.hpp"
#include "checklist/pipeline.hpp"
#include "checklist/solver.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace checklist;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << "  (" << detail << ")" << std::endl;
  if (!ok) ++failures;
}

void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(name, ok, detail);
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolverConfig default_solver(double lambda, Index d) {
  SolverConfig c;
  c.weights = ObjectiveWeights::with_default_eps(lambda, d);
  c.time_budget = 600.0;
  return c;
}

// Random instance i of the oracle family: n <= 40, d <= 4, <= 5 candidates.
testutil::Instance oracle_instance(int i) {
  const Index d = 1 + i % 4;
  const Index n = 10 + (i * 7) % 31;
  const int levels = 2 + i % 4;
  return testutil::random_instance(static_cast<std::uint64_t>(1000 + i), n, d, levels);
}

double oracle_lambda(int i) { return std::vector<double>{0.5, 1.0, 2.0}[static_cast<std::size_t>(i % 3)]; }

struct Planted {
  FeatureMatrix X;
  Labels clean, noisy;
  Checklist truth;
};

Planted planted_instance() {
  const Index n = 500, d = 8;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> level(0, 9);
  Eigen::MatrixXd v(n, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < d; ++j) v(i, j) = level(rng);
  Planted p;
  p.X = FeatureMatrix(v, testutil::default_names(d));
  p.truth.rules = {{0, 4.5}, {1, 3.5}, {2, 5.5}, {3, 6.5}};
  p.truth.m_required = 2;
  const Eigen::VectorXi y = predict_all(p.truth, p.X);
  p.clean = Labels(y);
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  Eigen::VectorXi noisy = y;
  for (std::size_t k = 0; k < 25; ++k) noisy(idx[k]) = 1 - noisy(idx[k]);
  p.noisy = Labels(noisy);
  return p;
}

std::string pipeline_report(int threads) {
  const auto out = testutil::scratch("determinism_t" + std::to_string(threads));
  auto c = load_config(fs::path(FIXTURE_DIR) / "run.ini");
  c.data_dir = fs::path(FIXTURE_DIR) / "patients";
  c.output_dir = out;
  c.threads = threads;
  std::ostringstream log;
  require(cmd_ingest(c, log) == kExitOk, ErrorKind::data, "ingest failed");
  for (const auto& m : kAllMethods) cmd_train(c, m, log);
  require(cmd_report(c, log) == kExitOk, ErrorKind::data, "report failed");
  return io::read_file(out / "report.json") + io::read_file(out / "table1.txt") +
         io::read_file(out / "table2.txt") + io::read_file(out / "thresholds.csv") +
         io::read_file(out / "thresholds.svg");
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1e-8, std::abs(a), std::abs(b)});
}

}  // namespace

int main() {
  std::cout.setf(std::ios::unitbuf);

  run("oracle_equivalence", [] {
    const auto t0 = std::chrono::steady_clock::now();
    int agree = 0;
    for (int i = 0; i < 50; ++i) {
      const auto inst = oracle_instance(i);
      const auto cs = make_candidates(inst.X);
      const auto cfg = default_solver(oracle_lambda(i), inst.X.cols());
      const auto r = solve_checklist(inst.X, inst.y, cs, cfg);
      const auto o = brute_force_oracle(inst.X, inst.y, cs, cfg);
      agree += r.certified_optimal && r.objective == o.objective;
    }
    const double secs = seconds_since(t0);
    return std::pair{agree == 50 && secs < 60.0,
                     std::to_string(agree) + "/50 exact, " + io::format_fixed(secs, 2) + " s"};
  });

  const auto planted = planted_instance();
  run("planted_recovery_noiseless", [&] {
    const auto cfg = default_solver(1.0, 8);
    const auto r = solve_checklist(planted.X, planted.clean, make_candidates(planted.X), cfg);
    const double truth = objective_value(evaluate_counts(planted.truth, planted.X, planted.clean),
                                         4, 2, cfg.weights);
    return std::pair{r.counts.l_plus == 0 && r.counts.l_minus == 0 && r.objective <= truth,
                     "objective " + io::format_double(r.objective) + " vs planted " +
                         io::format_double(truth) + ", certified " +
                         (r.certified_optimal ? "yes" : "no") + ", " +
                         io::format_fixed(r.wall_time, 2) + " s"};
  });

  run("planted_recovery_5pct_noise", [&] {
    const auto cfg = default_solver(1.0, 8);
    const auto r = solve_checklist(planted.X, planted.noisy, make_candidates(planted.X), cfg);
    const auto floor_counts = evaluate_counts(planted.truth, planted.X, planted.noisy);
    const double floor = objective_value(floor_counts, 4, 2, cfg.weights);
    return std::pair{r.objective <= floor,
                     "objective " + io::format_double(r.objective) + " vs noise floor " +
                         io::format_double(floor) + ", certified " +
                         (r.certified_optimal ? "yes" : "no") + ", " +
                         io::format_fixed(r.wall_time, 2) + " s"};
  });

  run("lambda_monotonicity", [] {
    const auto inst = testutil::random_instance(77, 120, 4, 6);
    const auto cs = make_candidates(inst.X);
    Index prev_minus = std::numeric_limits<Index>::max(), prev_plus = -1;
    bool ok = true;
    std::string trace;
    for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto r = solve_checklist(inst.X, inst.y, cs, default_solver(lambda, 4));
      ok = ok && r.certified_optimal && r.counts.l_minus <= prev_minus && r.counts.l_plus >= prev_plus;
      prev_minus = r.counts.l_minus;
      prev_plus = r.counts.l_plus;
      trace += (trace.empty() ? "" : " ") + std::string("(") + std::to_string(r.counts.l_plus) +
               "," + std::to_string(r.counts.l_minus) + ")";
    }
    return std::pair{ok, "(l+,l-) " + trace};
  });

  run("dominance_over_mean_thresholds", [&] {
    int checked = 0, held = 0;
    auto one = [&](const FeatureMatrix& X, const Labels& y, double lambda) {
      const auto cfg = default_solver(lambda, X.cols());
      const auto r = solve_checklist(X, y, make_candidates(X), cfg);
      const auto f = solve_fixed_thresholds(X, y, column_means(X), cfg);
      ++checked;
      held += r.certified_optimal && f.certified_optimal && r.objective <= f.objective;
    };
    for (int i = 0; i < 50; ++i) {
      const auto inst = oracle_instance(i);
      one(inst.X, inst.y, oracle_lambda(i));
    }
    one(planted.X, planted.clean, 1.0);
    one(planted.X, planted.noisy, 1.0);
    return std::pair{held == checked, std::to_string(held) + "/" + std::to_string(checked) + " instances"};
  });

  run("gradient_checks", [] {
    double worst_sets = 0.0, worst_mlp = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto inst = testutil::random_instance(seed + 7000, 40, 3, 9);
      const Eigen::MatrixXd& X = inst.X.values;
      const Eigen::VectorXd y = inst.y.y.cast<double>();
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> g(0.0, 1.0);
      Eigen::VectorXd phi(3), w(3);
      for (Index j = 0; j < 3; ++j) {
        phi(j) = 4.0 + g(rng);
        w(j) = g(rng);
      }
      const double tau = 1.5, b = -0.1, l2 = 1e-3, h = 1e-6;
      Eigen::VectorXd gphi;
      sets_loss<double>(X, y, phi, w, b, tau, l2, &gphi);
      for (Index j = 0; j < 3; ++j) {
        Eigen::VectorXd up = phi, dn = phi;
        up(j) += h;
        dn(j) -= h;
        const double fd = (sets_loss<double>(X, y, up, w, b, tau, l2) -
                           sets_loss<double>(X, y, dn, w, b, tau, l2)) / (2 * h);
        worst_sets = std::max(worst_sets, rel_err(gphi(j), fd));
      }
      const Eigen::MatrixXd Z = (X.rowwise() - X.colwise().mean()) / 3.0;
      auto model = mlp_init(3, 6, seed);
      model.b1.setConstant(0.05);
      MlpModel grad = model;
      mlp_loss(model, Z, y, l2, &grad);
      const Eigen::VectorXd theta = model.flatten(), analytic = grad.flatten();
      for (Index k = 0; k < theta.size(); ++k) {
        MlpModel up = model, dn = model;
        Eigen::VectorXd tu = theta, td = theta;
        tu(k) += h;
        td(k) -= h;
        up.unflatten(tu);
        dn.unflatten(td);
        const double fd = (mlp_loss(up, Z, y, l2) - mlp_loss(dn, Z, y, l2)) / (2 * h);
        worst_mlp = std::max(worst_mlp, rel_err(analytic(k), fd));
      }
    }
    std::ostringstream d;
    d << "max rel err SETS " << worst_sets << ", MLP " << worst_mlp;
    return std::pair{worst_sets < 1e-4 && worst_mlp < 1e-3, d.str()};
  });

  run("bound_admissibility", [] {
    std::mt19937_64 rng(31337);
    int sampled = 0, held = 0, attempts = 0;
    while (sampled < 1000 && attempts < 100000) {
      ++attempts;
      const Index d = 2 + static_cast<Index>(rng() % 3);
      const auto inst = testutil::random_instance(rng(), 8 + static_cast<Index>(rng() % 20), d, 2 + static_cast<int>(rng() % 3));
      const auto cs = make_candidates(inst.X);
      const auto w = ObjectiveWeights::with_default_eps(std::vector<double>{0.5, 1, 2}[rng() % 3], d);
      const Index next = static_cast<Index>(rng() % static_cast<std::uint64_t>(d + 1));
      std::vector<std::pair<Index, Index>> chosen;
      for (Index j = 0; j < next; ++j) {
        const auto pick = static_cast<Index>(rng() % static_cast<std::uint64_t>(cs.size(j) + 1));
        if (pick > 0) chosen.emplace_back(j, pick - 1);
      }
      const int M = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d));
      const double best = testutil::min_completion(inst.X, inst.y, cs, chosen, next, M, w);
      if (!std::isfinite(best)) continue;
      const auto s = SearchState::from_choices(cs, inst.X, chosen, next);
      ++sampled;
      held += bound_partial(s, inst.y, M, w, d - next) <= best;
    }
    return std::pair{sampled == 1000 && held == sampled,
                     std::to_string(held) + "/" + std::to_string(sampled) + " partial states"};
  });

  run("pipeline_determinism_threads", [] {
    const auto one = pipeline_report(1);
    const auto two = pipeline_report(2);
    const auto eight = pipeline_report(8);
    return std::pair{one == two && one == eight,
                     "reports for 1, 2, 8 threads: " + std::to_string(one.size()) + " bytes, " +
                         (one == two && one == eight ? "identical" : "differ")};
  });

  run("metrics_fidelity_all_negative", [] {
    // One fold of 2200 at 37% positive.
    Eigen::VectorXi y = Eigen::VectorXi::Zero(2200);
    y.head(814).setOnes();
    const auto m = classification_metrics(y, Eigen::VectorXi::Zero(2200));
    return std::pair{std::abs(m.accuracy - 0.63) <= 0.005 && m.precision == 0.0 && m.recall == 0.0,
                     "accuracy " + io::format_fixed(m.accuracy, 4) + ", precision " +
                         io::format_double(m.precision) + ", recall " + io::format_double(m.recall)};
  });

  const char* physionet = std::getenv("CHECKLIST_PHYSIONET_DIR");
  if (!physionet || !*physionet) {
    std::cout << "SKIP physionet_soft_target  (set CHECKLIST_PHYSIONET_DIR to the challenge files; not a gate)"
              << std::endl;
  } else {
    const int before = failures;
    run("physionet_soft_target", [&] {
      RunConfig c;
      c.data_dir = physionet;
      c.output_dir = testutil::scratch("physionet");
      c.time_budget = 900.0;
      std::ostringstream log;
      cmd_ingest(c, log);
      cmd_train(c, "mip", log);
      cmd_report(c, log);
      const auto doc = nlohmann::json::parse(io::read_file(c.output_dir / "report.json"));
      bool ok = true;
      std::string detail;
      for (const auto& m : doc.at("methods")) {
        if (m.at("label") != "mip") continue;
        const auto& a = m.at("aggregate");
        const double acc = 100.0 * a.at("accuracy").at("mean").get<double>();
        const double rec = a.at("recall").at("mean").get<double>();
        ok = std::abs(acc - 63.69) <= 3.0 && std::abs(rec - 0.40) <= 0.15;
        for (const auto& f : m.at("folds")) {
          const auto& t = f.at("test_metrics");
          ok = ok && t.at("n_rules").get<int>() <= 10 &&
               t.at("m_required").get<int>() <= t.at("n_rules").get<int>();
        }
        detail = "accuracy " + io::format_fixed(acc, 2) + ", recall " + io::format_fixed(rec, 3);
      }
      return std::pair{ok, detail + "; soft, not a gate"};
    });
    failures = before;
  }

  std::cout << (failures == 0 ? "ALL GATED CRITERIA PASS" : std::to_string(failures) + " criteria FAIL")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
