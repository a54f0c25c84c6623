#pragma once

// Per-patient time series ingestion: pipe-separated hourly files are reduced
// to one summary row each (mean, sd, last per variable), then sampled into
// imbalance-controlled folds.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "checklist/core_model.hpp"

namespace checklist {

inline constexpr std::string_view kSepsisLabelColumn = "SepsisLabel";

/// Hourly grid for one patient; missing entries are NaN.
struct PatientRecord {
  std::string patient_id;
  std::vector<std::string> variable_names;
  Eigen::MatrixXd hourly_values;  // T x V
  std::vector<int> sepsis_labels;  // length T
  int parse_warnings = 0;
};

struct IngestOptions {
  /// Variables that are constant per stay; they contribute their last value.
  std::vector<std::string> static_variables{"Age", "Gender", "Unit1", "Unit2",
                                            "HospAdmTime", "ICULOS"};
  /// Stay duration and admission offset encode outcome timing.
  std::vector<std::string> excluded_variables{"HospAdmTime", "ICULOS"};
};

/// Summary features of one patient; NaN marks a missing summary.
struct SummaryRow {
  std::string patient_id;
  Eigen::VectorXd features;
  int label = 0;
};

struct SummaryTable {
  std::vector<std::string> feature_names;
  std::vector<SummaryRow> rows;

  /// Features with NaN for missing entries, and labels.
  FeatureMatrix features() const;
  Labels labels() const;
  std::vector<Index> rows_for(const std::vector<std::string>& ids) const;
};

struct FoldSpec {
  int n_folds = 5;
  int fold_size = 2200;
  double target_pos_fraction = 0.37;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One fold after the stratified train/test split.
struct FoldSplit {
  int fold_id = 0;
  std::vector<std::string> train;
  std::vector<std::string> test;
};

PatientRecord parse_psv(std::string_view content, std::string patient_id);

/// Column names of the summary row produced for the given variables.
std::vector<std::string> summary_feature_names(
    const std::vector<std::string>& variable_names,
    const IngestOptions& options = {});

SummaryRow summarize_patient(const PatientRecord& record,
                             const IngestOptions& options = {});

/// Summaries for many records; the column set is the union of the records'
/// summary columns in first-seen order.
SummaryTable summarize_all(const std::vector<PatientRecord>& records,
                           const IngestOptions& options = {});

/// Each fold holds fold_size patients with round(fold_size * fraction)
/// positives. Negatives are disjoint across folds; positives are drawn
/// independently per fold (reuse across folds is allowed).
std::vector<std::vector<std::string>> build_folds(
    const std::vector<SummaryRow>& rows, const FoldSpec& spec);

/// Stratified split of one fold; round(test_fraction * class size) of each
/// class goes to the test side.
FoldSplit split_fold(const std::vector<std::string>& fold_ids,
                     const SummaryTable& table, int fold_id,
                     double test_fraction, std::uint64_t seed);

struct ImputeStats {
  std::vector<std::string> kept_names;
  std::vector<double> means;  // aligned with kept_names
  std::vector<std::string> dropped_names;
};

struct ImputeResult {
  FeatureMatrix X;
  ImputeStats stats;
};

/// Fit mode (no stats): per-column means over non-NaN entries, all-NaN
/// columns dropped. Apply mode: the given stats are used and the same
/// columns dropped.
ImputeResult impute_and_clean(const FeatureMatrix& X,
                              const std::optional<ImputeStats>& fitted = {});

// File formats.
std::string summary_to_csv(const SummaryTable& table);
SummaryTable summary_from_csv(const std::filesystem::path& path);
std::string folds_to_csv(const std::vector<FoldSplit>& folds);
std::vector<FoldSplit> folds_from_csv(const std::filesystem::path& path);

}  // namespace checklist
