#include "checklist/pipeline.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "checklist/baselines.hpp"
#include "checklist/feature_select.hpp"
#include "checklist/ingest.hpp"
#include "checklist/io.hpp"
#include "checklist/metrics.hpp"
#include "checklist/random.hpp"
#include "checklist/solver.hpp"

namespace checklist {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::format:
    case ErrorKind::data:
    case ErrorKind::training:
      return kExitData;
    case ErrorKind::structural:
    case ErrorKind::config:
    case ErrorKind::refusal:
      break;
  }
  return kExitUsage;
}

namespace {

fs::path summary_path(const RunConfig& c) { return c.output_dir / "summary.csv"; }
fs::path folds_path(const RunConfig& c) { return c.output_dir / "folds.csv"; }
fs::path models_dir(const RunConfig& c) { return c.output_dir / "models"; }

void require_artifact(const fs::path& p) {
  require(fs::exists(p), ErrorKind::config,
          "missing " + p.string() + "; run the ingest subcommand first");
}

std::string fold_file(int k) { return "fold_" + std::to_string(k) + ".json"; }

ObjectiveWeights objective_for(const RunConfig& c, double lambda, Index d) {
  auto w = ObjectiveWeights::with_default_eps(lambda, d);
  if (c.eps_n) w.eps_n = *c.eps_n;
  if (c.eps_m) w.eps_m = *c.eps_m;
  w.validate();
  return w;
}

SolverConfig solver_config(const RunConfig& c, const ObjectiveWeights& w, Index d,
                           const std::string& label, int fold) {
  SolverConfig s;
  s.weights = w;
  s.max_rules = c.max_rules == 0 ? 0 : std::min(c.max_rules, static_cast<int>(d));
  s.time_budget = c.time_budget;
  s.node_budget = c.node_budget;
  s.threads = c.threads;
  s.seed = fork_seed(c.seed, label + ":fold" + std::to_string(fold));
  return s;
}

/// Method directory labels; a lambda grid with more than one value gives
/// every objective-driven method one label per lambda.
std::vector<std::pair<std::string, double>> labels_for(const RunConfig& c,
                                                       const std::string& method) {
  const bool per_lambda = (method == "mip" || method == "ilp-mean") && c.lambda_grid.size() > 1;
  if (!per_lambda) return {{method, c.lambda_grid.front()}};
  std::vector<std::pair<std::string, double>> out;
  for (double l : c.lambda_grid)
    out.emplace_back(method + "-lambda" + io::format_double(l), l);
  return out;
}

std::string base_method(const std::string& label) {
  const auto pos = label.find("-lambda");
  return pos == std::string::npos ? label : label.substr(0, pos);
}

json train_stats(const FeatureMatrix& X) {
  json j = json::object();
  for (Index c = 0; c < X.cols(); ++c) {
    j[X.names[static_cast<std::size_t>(c)]] = {{"mean", X.values.col(c).mean()},
                                               {"min", X.values.col(c).minCoeff()},
                                               {"max", X.values.col(c).maxCoeff()}};
  }
  return j;
}

MetricSet checklist_metrics(const Checklist& c, const FeatureMatrix& X, const Labels& y) {
  auto m = classification_metrics(y.y, predict_all(c, X));
  m.n_rules = c.n_rules();
  m.m_required = c.m_required;
  return m;
}

Eigen::VectorXi threshold_scores(const Eigen::VectorXd& scores) {
  return (scores.array() >= 0.5).cast<int>();
}

std::vector<int> to_vector(const Eigen::VectorXi& v) { return {v.data(), v.data() + v.size()}; }
std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

struct FoldOutcome {
  json body;
  bool certified = true;
};

FoldOutcome train_checklist_solver(const RunConfig& config, const PreparedFold& f,
                                   const std::string& label, double lambda,
                                   bool mean_thresholds) {
  const FeatureMatrix X = config.allow_negated_features ? with_negated_features(f.train_X)
                                                        : f.train_X;
  const FeatureMatrix Xt = config.allow_negated_features ? with_negated_features(f.test_X)
                                                         : f.test_X;
  const auto weights = objective_for(config, lambda, X.cols());
  const auto sc = solver_config(config, weights, X.cols(), label, f.fold_id);
  const SolveResult r =
      mean_thresholds
          ? solve_fixed_thresholds(X, f.train_y, column_means(X), sc)
          : solve_checklist(X, f.train_y,
                            make_candidates(X, static_cast<Index>(config.candidate_cap)), sc);
  FoldOutcome out;
  out.certified = r.certified_optimal;
  out.body["features"] = X.names;
  out.body["lambda"] = lambda;
  out.body["objective_weights"] = {{"lambda", weights.lambda},
                                   {"eps_n", weights.eps_n},
                                   {"eps_m", weights.eps_m}};
  out.body["model"] = to_json(r.best, X.names);
  out.body["checklist_text"] = to_text(r.best, X.names);
  out.body["solver"] = to_json(r, X.names);
  out.body["train_stats"] = train_stats(X);
  out.body["test_metrics"] = to_json(checklist_metrics(r.best, Xt, f.test_y));
  return out;
}

FoldOutcome train_fold(const RunConfig& config, const PreparedFold& f,
                       const std::string& method, const std::string& label,
                       double lambda) {
  if (method == "mip") return train_checklist_solver(config, f, label, lambda, false);
  if (method == "ilp-mean") return train_checklist_solver(config, f, label, lambda, true);

  FoldOutcome out;
  out.body["features"] = f.train_X.names;
  TrainHyper lr = config.lr;
  lr.seed = fork_seed(config.seed, label + ":fold" + std::to_string(f.fold_id));

  if (method == "dummy") {
    const auto model = dummy_fit(f.train_y);
    out.body["model"] = {{"constant", model.constant}};
    out.body["test_metrics"] =
        to_json(classification_metrics(f.test_y.y, dummy_predict(model, f.test_y.size())));
  } else if (method == "lr") {
    const auto model = fit_logistic(f.train_X, f.train_y, lr);
    const Eigen::VectorXd scores = model.score_all(f.test_X.values);
    out.body["model"] = {{"weights", to_vector(model.weights)},
                         {"bias", model.bias},
                         {"feature_means", to_vector(model.feature_means)},
                         {"feature_sds", to_vector(model.feature_sds)}};
    out.body["test_scores"] = to_vector(scores);
    out.body["test_labels"] = to_vector(f.test_y.y);
    out.body["test_metrics"] =
        to_json(classification_metrics(f.test_y.y, threshold_scores(scores)));
  } else if (method == "mlp") {
    const auto s = standardize(f.train_X);
    MlpHyper h = config.mlp;
    h.seed = lr.seed;
    const auto model = mlp_train(s.Z.values, f.train_y, h);
    const Eigen::VectorXd scores = mlp_score_all(model, s.transform(f.test_X.values));
    out.body["model"] = {{"hidden", model.b1.size()},
                         {"inputs", s.Z.names},
                         {"parameters", to_vector(model.flatten())}};
    out.body["test_scores"] = to_vector(scores);
    out.body["test_labels"] = to_vector(f.test_y.y);
    out.body["test_metrics"] =
        to_json(classification_metrics(f.test_y.y, threshold_scores(scores)));
  } else if (method == "unit" || method == "sets") {
    const auto weights = objective_for(config, lambda, f.train_X.cols());
    Checklist c;
    if (method == "unit") {
      const auto means = column_means(f.train_X);
      c = unit_weighting(binarize_at(f.train_X, means), f.train_y, lr, config.unit,
                         means, weights);
    } else {
      SetsHyper sh;
      sh.lr = lr;
      const auto model = sets_train(f.train_X, f.train_y, config.sets_tau, sh);
      c = sets_to_checklist(model, f.train_X, f.train_y, lr, config.unit, weights);
      json phi = json::object();
      for (Index j = 0; j < model.phi.size(); ++j)
        phi[f.train_X.names[static_cast<std::size_t>(j)]] = model.phi(j);
      out.body["sets"] = {{"phi", phi},
                          {"tau", model.tau},
                          {"weights", to_vector(model.weights)},
                          {"bias", model.bias}};
      out.body["train_stats"] = train_stats(f.train_X);
    }
    out.body["model"] = to_json(c, f.train_X.names);
    out.body["checklist_text"] = to_text(c, f.train_X.names);
    out.body["test_metrics"] = to_json(checklist_metrics(c, f.test_X, f.test_y));
  } else {
    fail(ErrorKind::config, "unknown method '" + method + "'");
  }
  return out;
}

void replace_directory(const fs::path& staged, const fs::path& target) {
  fs::remove_all(target);
  fs::rename(staged, target);
}

// ---------------------------------------------------------------------------
// Report helpers.

struct LoadedMethod {
  std::string label;
  std::vector<json> folds;
};

std::vector<LoadedMethod> load_models(const RunConfig& config) {
  std::vector<LoadedMethod> out;
  const auto root = models_dir(config);
  if (!fs::is_directory(root)) return out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const auto label = entry.path().filename().string();
    if (label.ends_with(".tmp")) continue;
    LoadedMethod m{label, {}};
    for (int k = 0; fs::exists(entry.path() / fold_file(k)); ++k)
      m.folds.push_back(json::parse(io::read_file(entry.path() / fold_file(k))));
    if (!m.folds.empty()) out.push_back(std::move(m));
  }
  auto rank = [](const std::string& label) {
    const auto base = base_method(label);
    return std::find(kAllMethods.begin(), kAllMethods.end(), base) - kAllMethods.begin();
  };
  std::sort(out.begin(), out.end(), [&](const LoadedMethod& a, const LoadedMethod& b) {
    return std::pair(rank(a.label), a.label) < std::pair(rank(b.label), b.label);
  });
  return out;
}

std::string pm(const MeanStd& v, double scale, int decimals) {
  return io::format_fixed(v.mean * scale, decimals) + " ± " +
         io::format_fixed(v.std * scale, decimals);
}

std::string table1(const std::vector<LoadedMethod>& methods,
                   const std::vector<FoldAggregate>& aggs) {
  std::ostringstream out;
  auto cell = [&](const std::string& s, int width) {
    // The ± sign is two bytes but one column wide.
    const auto extra = s.find("±") != std::string::npos ? 1 : 0;
    out << std::left << std::setw(width + extra) << s;
  };
  cell("method", 22);
  for (const char* h : {"accuracy (%)", "precision", "recall", "specificity", "N", "M"})
    cell(h, 18);
  out << '\n';
  for (std::size_t k = 0; k < methods.size(); ++k) {
    const auto& a = aggs[k];
    cell(methods[k].label, 22);
    cell(pm(a.accuracy, 100.0, 2), 18);
    cell(pm(a.precision, 1.0, 3), 18);
    cell(pm(a.recall, 1.0, 3), 18);
    cell(pm(a.specificity, 1.0, 3), 18);
    cell(a.n_rules ? pm(*a.n_rules, 1.0, 2) : "-", 18);
    cell(a.m_required ? pm(*a.m_required, 1.0, 2) : "-", 18);
    out << '\n';
  }
  return out.str();
}

const LoadedMethod* find_method(const std::vector<LoadedMethod>& m,
                                const std::string& base) {
  for (const auto& x : m)
    if (base_method(x.label) == base) return &x;
  return nullptr;
}

struct OperatingPointTable {
  json doc;
  std::string text;
};

OperatingPointTable operating_point_table(const std::vector<LoadedMethod>& methods,
                                          std::ostream& log) {
  OperatingPointTable t;
  const auto* mip = find_method(methods, "mip");
  const auto* lr = find_method(methods, "lr");
  if (!mip || !lr) {
    t.doc = nullptr;
    t.text = "operating-point comparison needs both the mip and lr methods\n";
    return t;
  }
  std::vector<double> mip_p, mip_r, p_at_r, r_at_p;
  json folds = json::array();
  const auto n = std::min(mip->folds.size(), lr->folds.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto m = metric_set_from_json(mip->folds[k].at("test_metrics"));
    const auto scores = lr->folds[k].at("test_scores").get<std::vector<double>>();
    const auto labels = lr->folds[k].at("test_labels").get<std::vector<int>>();
    const Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(
        scores.data(), static_cast<Index>(scores.size()));
    const Eigen::VectorXi y = Eigen::Map<const Eigen::VectorXi>(
        labels.data(), static_cast<Index>(labels.size()));
    json row{{"fold", k}, {"mip_precision", m.precision}, {"mip_recall", m.recall}};
    mip_p.push_back(m.precision);
    mip_r.push_back(m.recall);
    auto targeted = [&](double target, bool at_recall, const char* key,
                        std::vector<double>& sink) {
      if (!(target > 0.0 && target < 1.0)) {
        log << "warning: fold " << k << ": " << key << " target " << target
            << " lies outside (0, 1); skipped\n";
        row[key] = nullptr;
        return;
      }
      const auto v = at_recall ? precision_at_recall(s, y, target)
                               : recall_at_precision(s, y, target);
      if (!v.qualified)
        log << "warning: fold " << k << ": no LR operating point reaches " << key
            << " target " << target << "; reporting 0\n";
      row[key] = v.value;
      row[std::string(key) + "_qualified"] = v.qualified;
      sink.push_back(v.value);
    };
    targeted(m.recall, true, "lr_precision_at_mip_recall", p_at_r);
    targeted(m.precision, false, "lr_recall_at_mip_precision", r_at_p);
    folds.push_back(row);
  }
  auto agg = [](const std::vector<double>& v) -> json {
    if (v.empty()) return nullptr;
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const auto ms = mean_std(sorted);
    return {{"mean", ms.mean}, {"std", ms.std}, {"folds", v.size()}};
  };
  t.doc = {{"mip_label", mip->label}, {"folds", folds},
           {"lr_precision_at_mip_recall", agg(p_at_r)},
           {"lr_recall_at_mip_precision", agg(r_at_p)},
           {"mip_precision", agg(mip_p)}, {"mip_recall", agg(mip_r)}};

  std::ostringstream out;
  auto show = [](const json& j) {
    return j.is_null() ? std::string("n/a")
                       : io::format_fixed(j["mean"].get<double>(), 3) + " ± " +
                             io::format_fixed(j["std"].get<double>(), 3);
  };
  out << std::left << std::setw(34) << "comparison" << "value\n";
  out << std::setw(34) << (mip->label + " precision") << show(t.doc["mip_precision"]) << '\n';
  out << std::setw(34) << (mip->label + " recall") << show(t.doc["mip_recall"]) << '\n';
  out << std::setw(34) << "lr precision at mip recall" << show(t.doc["lr_precision_at_mip_recall"]) << '\n';
  out << std::setw(34) << "lr recall at mip precision" << show(t.doc["lr_recall_at_mip_precision"]) << '\n';
  t.text = out.str();
  return t;
}

json threshold_figure(const std::vector<LoadedMethod>& methods, const fs::path& out_base) {
  const auto* mip = find_method(methods, "mip");
  if (!mip) return nullptr;
  const auto& fold = mip->folds.front();
  const auto features = fold.at("features").get<std::vector<std::string>>();
  const auto checklist = checklist_from_json(fold.at("model"), features);
  std::map<std::string, double> mip_t, phi, means;
  std::map<std::string, std::pair<double, double>> ranges;
  for (const auto& r : checklist.rules)
    mip_t[features[static_cast<std::size_t>(r.feature)]] = r.threshold;
  for (const auto& [name, st] : fold.at("train_stats").items()) {
    means[name] = st.at("mean").get<double>();
    ranges[name] = {st.at("min").get<double>(), st.at("max").get<double>()};
  }
  if (const auto* sets = find_method(methods, "sets")) {
    for (const auto& [name, v] : sets->folds.front().at("sets").at("phi").items())
      if (ranges.count(name)) phi[name] = v.get<double>();
  }
  export_threshold_comparison(features, mip_t, phi, means, ranges, out_base);
  json rows = json::array();
  for (const auto& r : threshold_comparison(features, mip_t, phi, means, ranges)) {
    auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    rows.push_back({{"feature", r.feature}, {"mip", num(r.mip)}, {"sets", num(r.sets)},
                    {"mean", num(r.mean)}, {"mip_clipped", r.mip_clipped},
                    {"sets_clipped", r.sets_clipped}, {"mean_clipped", r.mean_clipped}});
  }
  return {{"source_fold", 0}, {"mip_label", mip->label}, {"rows", rows}};
}

}  // namespace

std::vector<PreparedFold> prepare_folds(const RunConfig& config) {
  require_artifact(summary_path(config));
  require_artifact(folds_path(config));
  const auto table = summary_from_csv(summary_path(config));
  const auto splits = folds_from_csv(folds_path(config));
  require(!splits.empty(), ErrorKind::data, "fold manifest lists no folds");
  const FeatureMatrix all = table.features();
  const Labels labels = table.labels();

  std::vector<PreparedFold> out;
  for (const auto& s : splits) {
    const auto train_rows = table.rows_for(s.train);
    const auto test_rows = table.rows_for(s.test);
    require(!train_rows.empty() && !test_rows.empty(), ErrorKind::data,
            "fold " + std::to_string(s.fold_id) + " has an empty train or test split");
    auto fit = impute_and_clean(all.select_rows(train_rows));
    auto applied = impute_and_clean(all.select_rows(test_rows), fit.stats);

    PreparedFold f;
    f.fold_id = s.fold_id;
    f.train_y = labels.select(train_rows);
    f.test_y = labels.select(test_rows);
    require(!f.train_y.pos.empty() && !f.train_y.neg.empty(), ErrorKind::data,
            "fold " + std::to_string(s.fold_id) + " training split holds a single class");
    require(config.k_features <= fit.X.cols(), ErrorKind::config,
            "k_features = " + std::to_string(config.k_features) + " exceeds the " +
                std::to_string(fit.X.cols()) + " usable features of fold " +
                std::to_string(s.fold_id));
    TrainHyper hyper = config.lr;
    hyper.seed = fork_seed(config.seed, "select:fold" + std::to_string(s.fold_id));
    const auto lr = fit_logistic(fit.X, f.train_y, hyper);
    const auto selected = select_top_k(lr, config.k_features);
    f.train_X = fit.X.select_columns(selected);
    f.test_X = applied.X.select_columns(selected);
    f.feature_manifest = feature_manifest_csv(lr, selected, fit.X.names);
    out.push_back(std::move(f));
  }
  return out;
}

int cmd_ingest(const RunConfig& config, std::ostream& log) {
  config.validate();
  require(!config.data_dir.empty(), ErrorKind::config, "data.data_dir is not set");
  require(fs::is_directory(config.data_dir), ErrorKind::config,
          "data directory " + config.data_dir.string() + " does not exist");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(config.data_dir))
    if (e.is_regular_file() && e.path().extension() == ".psv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  require(!files.empty(), ErrorKind::config,
          "data directory " + config.data_dir.string() + " holds no .psv files");

  std::vector<PatientRecord> records;
  std::vector<std::string> failures;
  long warnings = 0;
  for (const auto& p : files) {
    try {
      records.push_back(parse_psv(io::read_file(p), p.stem().string()));
      warnings += records.back().parse_warnings;
    } catch (const Error& e) {
      failures.push_back(p.filename().string() + ": " + e.what());
    }
  }
  for (const auto& f : failures) log << "unreadable: " << f << '\n';
  require(failures.size() * 10 <= files.size(), ErrorKind::data,
          std::to_string(failures.size()) + " of " + std::to_string(files.size()) +
              " patient files could not be read (limit 10%)");

  const auto table = summarize_all(records);
  FoldSpec spec = config.folds;
  spec.seed = config.seed;
  const auto folds = build_folds(table.rows, spec);
  std::vector<FoldSplit> splits;
  for (std::size_t k = 0; k < folds.size(); ++k)
    splits.push_back(split_fold(folds[k], table, static_cast<int>(k),
                                config.test_fraction, config.seed));

  std::ostringstream summary;
  summary << "files " << files.size() << "\nparsed " << records.size() << "\nfailed "
          << failures.size() << "\nparse_warnings " << warnings << '\n';
  for (const auto& f : failures) summary << "unreadable " << f << '\n';

  fs::create_directories(config.output_dir);
  io::write_file_atomic(summary_path(config), summary_to_csv(table));
  io::write_file_atomic(folds_path(config), folds_to_csv(splits));
  io::write_file_atomic(config.output_dir / "ingest_log.txt", summary.str());
  log << "ingested " << records.size() << " patients into " << splits.size()
      << " folds\n";
  return kExitOk;
}

int cmd_train(const RunConfig& config, const std::string& method, std::ostream& log) {
  config.validate();
  require(std::find(kAllMethods.begin(), kAllMethods.end(), method) != kAllMethods.end(),
          ErrorKind::config, "unknown method '" + method + "'");
  const auto folds = prepare_folds(config);

  fs::create_directories(config.output_dir / "features");
  for (const auto& f : folds)
    io::write_file_atomic(config.output_dir / "features" /
                              ("fold_" + std::to_string(f.fold_id) + ".csv"),
                          f.feature_manifest);

  bool all_certified = true;
  for (const auto& [label, lambda] : labels_for(config, method)) {
    const auto staged = models_dir(config) / (label + ".tmp");
    fs::remove_all(staged);
    fs::create_directories(staged);
    for (const auto& f : folds) {
      auto outcome = train_fold(config, f, method, label, lambda);
      outcome.body["method"] = label;
      outcome.body["fold"] = f.fold_id;
      all_certified = all_certified && outcome.certified;
      if (!outcome.certified)
        log << "warning: " << label << " fold " << f.fold_id
            << ": budget exhausted before the optimality certificate\n";
      io::write_file_atomic(staged / fold_file(f.fold_id), outcome.body.dump(2) + "\n");
    }
    replace_directory(staged, models_dir(config) / label);
    log << "trained " << label << " on " << folds.size() << " folds\n";
  }
  return all_certified ? kExitOk : kExitBudget;
}

int cmd_report(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto methods = load_models(config);
  require(!methods.empty(), ErrorKind::config,
          "no trained methods under " + models_dir(config).string() +
              "; run the train subcommand first");

  json doc;
  doc["config"] = to_json(config);
  json jm = json::array();
  std::vector<FoldAggregate> aggs;
  for (const auto& m : methods) {
    std::vector<MetricSet> sets;
    json folds = json::array();
    for (const auto& f : m.folds) {
      sets.push_back(metric_set_from_json(f.at("test_metrics")));
      json row{{"fold", f.at("fold")}, {"test_metrics", f.at("test_metrics")}};
      if (f.contains("model") && f["model"].contains("rules")) {
        row["checklist"] = f["model"];
        row["checklist_text"] = f.at("checklist_text");
      }
      if (f.contains("solver")) {
        // Node counts and timings vary with thread count and machine load.
        const auto& s = f["solver"];
        row["certificate"] = {{"objective", s.at("objective")},
                              {"lower_bound", s.at("lower_bound")},
                              {"certified_optimal", s.at("certified_optimal")},
                              {"l_plus", s.at("l_plus")},
                              {"l_minus", s.at("l_minus")}};
      }
      folds.push_back(row);
    }
    aggs.push_back(aggregate_folds(sets));
    jm.push_back({{"label", m.label}, {"folds", folds}, {"aggregate", to_json(aggs.back())}});
  }
  doc["methods"] = jm;
  const auto op = operating_point_table(methods, log);
  doc["operating_points"] = op.doc;
  doc["threshold_figure"] = threshold_figure(methods, config.output_dir / "thresholds");

  io::write_file_atomic(config.output_dir / "report.json", doc.dump(2) + "\n");
  io::write_file_atomic(config.output_dir / "table1.txt", table1(methods, aggs));
  io::write_file_atomic(config.output_dir / "table2.txt", op.text);
  log << "report covers " << methods.size() << " methods\n";
  return kExitOk;
}

int cmd_export_mip(const RunConfig& config, int fold_id, const fs::path& out_path,
                   std::ostream& log) {
  config.validate();
  const auto folds = prepare_folds(config);
  auto it = std::find_if(folds.begin(), folds.end(),
                         [&](const PreparedFold& f) { return f.fold_id == fold_id; });
  require(it != folds.end(), ErrorKind::config,
          "fold " + std::to_string(fold_id) + " is not in the fold manifest");
  const FeatureMatrix X =
      config.allow_negated_features ? with_negated_features(it->train_X) : it->train_X;
  const auto weights = objective_for(config, config.lambda_grid.front(), X.cols());
  const auto sc = solver_config(config, weights, X.cols(), "export", fold_id);
  const std::optional<CandidateSet> candidates =
      config.candidate_cap > 0
          ? std::optional(make_candidates(X, static_cast<Index>(config.candidate_cap)))
          : std::nullopt;
  io::write_file_atomic(out_path, export_mip_form(X, it->train_y, candidates, sc));
  log << "wrote " << out_path.string() << '\n';
  return kExitOk;
}

}  // namespace checklist
