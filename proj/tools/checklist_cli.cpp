// checklist: learn M-of-N checklists and run the comparison experiments.
//
//   checklist ingest  --config run.ini
//   checklist train   --config run.ini --method mip
//   checklist report  --config run.ini
//   checklist export-mip --config run.ini --fold 0 --out fold0.lp
//   checklist defaults

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "checklist/config.hpp"
#include "checklist/pipeline.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string data_dir, output_dir;
  std::string seed, threads, time_budget, node_budget, k_features, lambda;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "INI run configuration");
    cmd->add_option("--set", overrides, "override a config key: section.key=value");
    cmd->add_option("--data-dir", data_dir, "directory of per-patient .psv files");
    cmd->add_option("--output-dir", output_dir, "artifact directory");
    cmd->add_option("--seed", seed, "run seed");
    cmd->add_option("--threads", threads, "solver worker threads");
    cmd->add_option("--time-budget", time_budget, "solver seconds per fold");
    cmd->add_option("--node-budget", node_budget, "solver node cap per fold (0: none)");
    cmd->add_option("--k-features", k_features, "features kept per fold");
    cmd->add_option("--lambda", lambda, "comma-separated lambda grid");
  }

  checklist::RunConfig load() const {
    auto config = config_path.empty() ? checklist::RunConfig{}
                                      : checklist::load_config(config_path);
    auto set = [&](const char* key, const std::string& v) {
      if (!v.empty()) checklist::set_config_value(config, key, v);
    };
    set("data.data_dir", data_dir);
    set("data.output_dir", output_dir);
    set("run.seed", seed);
    set("solver.threads", threads);
    set("solver.time_budget", time_budget);
    set("solver.node_budget", node_budget);
    set("features.k_features", k_features);
    set("solver.lambda", lambda);
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      checklist::require(eq != std::string::npos, checklist::ErrorKind::config,
                         "--set expects section.key=value, got '" + o + "'");
      checklist::set_config_value(config, o.substr(0, eq), o.substr(eq + 1));
    }
    config.validate();
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn M-of-N predictive checklists by exact branch-and-bound"};
  app.require_subcommand(1);

  CommonFlags ingest_flags, train_flags, report_flags, export_flags;

  auto* ingest = app.add_subcommand("ingest", "summarize patient files and build folds");
  ingest_flags.attach(ingest);

  auto* train = app.add_subcommand("train", "train one method (or all) on every fold");
  train_flags.attach(train);
  std::vector<std::string> methods;
  train->add_option("-m,--method", methods,
                    "mip, ilp-mean, lr, mlp, dummy, unit, sets or all (repeatable)")
      ->required();

  auto* report = app.add_subcommand("report", "aggregate trained methods into tables and plots");
  report_flags.attach(report);

  auto* export_mip = app.add_subcommand("export-mip", "write one fold's MIP in LP format");
  export_flags.attach(export_mip);
  int fold = 0;
  std::string out_path;
  export_mip->add_option("--fold", fold, "fold id");
  export_mip->add_option("-o,--out", out_path, "output .lp path")->required();

  auto* defaults = app.add_subcommand("defaults", "print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? checklist::kExitOk : checklist::kExitUsage;
  }

  try {
    if (*defaults) {
      std::cout << checklist::to_ini(checklist::RunConfig{});
      return checklist::kExitOk;
    }
    if (*ingest) return checklist::cmd_ingest(ingest_flags.load(), std::cerr);
    if (*report) return checklist::cmd_report(report_flags.load(), std::cerr);
    if (*export_mip)
      return checklist::cmd_export_mip(export_flags.load(), fold, out_path, std::cerr);
    if (*train) {
      const auto config = train_flags.load();
      std::vector<std::string> todo;
      for (const auto& m : methods) {
        if (m == "all") todo.insert(todo.end(), config.methods.begin(), config.methods.end());
        else todo.push_back(m);
      }
      for (const auto& m : todo)
        checklist::require(std::find(checklist::kAllMethods.begin(),
                                     checklist::kAllMethods.end(),
                                     m) != checklist::kAllMethods.end(),
                           checklist::ErrorKind::config, "unknown method '" + m + "'");
      int rc = checklist::kExitOk;
      for (const auto& m : todo) {
        const int r = checklist::cmd_train(config, m, std::cerr);
        if (r != checklist::kExitOk) rc = r;
      }
      return rc;
    }
  } catch (const checklist::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return checklist::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return checklist::kExitData;
  }
  return checklist::kExitUsage;
}
