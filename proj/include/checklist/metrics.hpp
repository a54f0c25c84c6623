#pragma once

// Evaluation metrics, operating-point comparisons, fold aggregation and the
// threshold comparison plot.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "checklist/core_model.hpp"

namespace checklist {

struct MetricSet {
  double accuracy = 0.0;
  double precision = 0.0;  // 0 when nothing is predicted positive
  double recall = 0.0;
  double specificity = 0.0;
  std::optional<int> n_rules;
  std::optional<int> m_required;
};

MetricSet classification_metrics(const Eigen::VectorXi& y,
                                 const Eigen::VectorXi& y_hat);

struct OperatingPoint {
  double threshold = 0.0;  // predict 1 iff score >= threshold
  double precision = 0.0;
  double recall = 0.0;
};

/// Step-function sweep over descending unique scores.
std::vector<OperatingPoint> operating_points(const Eigen::VectorXd& scores,
                                             const Eigen::VectorXi& y);

struct TargetedMetric {
  double value = 0.0;
  bool qualified = false;  // false: no operating point reached the target
};

/// Precision of the qualifying point (recall >= target) with the smallest
/// recall; ties go to the higher precision.
TargetedMetric precision_at_recall(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXi& y, double target_recall);
/// Recall of the qualifying point (precision >= target) with the smallest
/// precision; ties go to the higher recall.
TargetedMetric recall_at_precision(const Eigen::VectorXd& scores,
                                   const Eigen::VectorXi& y,
                                   double target_precision);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};

MeanStd mean_std(const std::vector<double>& values);

struct FoldAggregate {
  MeanStd accuracy, precision, recall, specificity;
  std::optional<MeanStd> n_rules, m_required;
};

FoldAggregate aggregate_folds(const std::vector<MetricSet>& per_fold);

nlohmann::json to_json(const MetricSet& m);
MetricSet metric_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FoldAggregate& a);

struct ThresholdRow {
  std::string feature;
  double mip = 0.0;
  double sets = 0.0;
  double mean = 0.0;
  bool mip_clipped = false;
  bool sets_clipped = false;
  bool mean_clipped = false;
};

/// Min-max normalized thresholds per feature, clipped to [-0.1, 1.1].
/// Features without a MIP rule get NaN in that column.
std::vector<ThresholdRow> threshold_comparison(
    const std::vector<std::string>& features,
    const std::map<std::string, double>& mip_thresholds,
    const std::map<std::string, double>& sets_phi,
    const std::map<std::string, double>& column_means,
    const std::map<std::string, std::pair<double, double>>& column_ranges);

std::string threshold_csv(const std::vector<ThresholdRow>& rows);
std::string threshold_svg(const std::vector<ThresholdRow>& rows);

/// Writes <out_path>.csv and <out_path>.svg.
void export_threshold_comparison(
    const std::vector<std::string>& features,
    const std::map<std::string, double>& mip_thresholds,
    const std::map<std::string, double>& sets_phi,
    const std::map<std::string, double>& column_means,
    const std::map<std::string, std::pair<double, double>>& column_ranges,
    const std::filesystem::path& out_path);

}  // namespace checklist
