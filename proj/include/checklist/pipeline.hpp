#pragma once

// End-to-end experiment driver behind the command-line subcommands.
//
// Output layout under config.output_dir:
//   summary.csv, folds.csv, ingest_log.txt         written by ingest
//   features/fold_<k>.csv                          selected-feature manifests
//   models/<label>/fold_<k>.json                   one trained model per fold
//   report.json, table1.txt, table2.txt,
//   thresholds.csv, thresholds.svg                 written by report

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "checklist/config.hpp"
#include "checklist/core_model.hpp"

namespace checklist {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitBudget = 3,
};

/// Process exit code for a library error.
int exit_code_for(const Error& e);

/// One fold after imputation and feature selection, ready for training.
struct PreparedFold {
  int fold_id = 0;
  FeatureMatrix train_X, test_X;  // selected columns, descending |LR weight|
  Labels train_y, test_y;
  std::string feature_manifest;
};

/// Reads the ingest artifacts and prepares every fold.
std::vector<PreparedFold> prepare_folds(const RunConfig& config);

int cmd_ingest(const RunConfig& config, std::ostream& log);

/// Trains one method on every fold. Returns kExitBudget when a solver run
/// ended without an optimality certificate (the incumbent is still written).
int cmd_train(const RunConfig& config, const std::string& method,
              std::ostream& log);

int cmd_report(const RunConfig& config, std::ostream& log);

/// Writes the big-M model of one fold's training split.
int cmd_export_mip(const RunConfig& config, int fold_id,
                   const std::filesystem::path& out_path, std::ostream& log);

}  // namespace checklist
