#pragma once

// M-of-N checklists over threshold concepts, with the weighted
// misclassification objective.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "checklist/error.hpp"

namespace checklist {

using Index = Eigen::Index;

/// Dense n x d design matrix with column names.
struct FeatureMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> names;

  FeatureMatrix() = default;
  FeatureMatrix(Eigen::MatrixXd v, std::vector<std::string> n);

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }

  /// Throws unless n, d >= 1, names are unique and match d, values finite.
  void validate() const;

  /// Subset of columns in the given order.
  FeatureMatrix select_columns(const std::vector<Index>& cols) const;
  /// Subset of rows in the given order.
  FeatureMatrix select_rows(const std::vector<Index>& rows) const;

  std::optional<Index> find(const std::string& name) const;
};

/// Binary outcomes with the positive / negative index partition.
struct Labels {
  Eigen::VectorXi y;
  std::vector<Index> pos;
  std::vector<Index> neg;

  Labels() = default;
  explicit Labels(Eigen::VectorXi values);
  static Labels from(const std::vector<int>& values);

  Index size() const { return y.size(); }
  Labels select(const std::vector<Index>& rows) const;
};

/// Concept "x_j > t" (or "x_j <= t" when negated; only unit weighting emits
/// negated rules).
struct ConceptRule {
  Index feature = 0;
  double threshold = 0.0;
  bool negated = false;

  bool operator==(const ConceptRule&) const = default;
};

struct Checklist {
  std::vector<ConceptRule> rules;
  int m_required = 1;

  int n_rules() const { return static_cast<int>(rules.size()); }

  /// Throws unless 1 <= M <= N, features in range, one rule per feature.
  void validate(Index d) const;

  bool operator==(const Checklist&) const = default;
};

struct ObjectiveWeights {
  double lambda = 1.0;
  double eps_n = 0.0;
  double eps_m = 0.0;

  void validate() const;

  /// eps_n = eps_m = min(1, lambda) / (4 d): the size penalty of any
  /// checklist with N <= d stays below one misclassification.
  static ObjectiveWeights with_default_eps(double lambda, Index d);
};

struct EvalCounts {
  Index l_plus = 0;
  Index l_minus = 0;
  Index tp = 0;
  Index fp = 0;
  Index tn = 0;
  Index fn = 0;
};

inline bool concept_value(const ConceptRule& rule, double x) {
  return rule.negated ? !(x > rule.threshold) : (x > rule.threshold);
}

/// Binary concept vector for one row; entry k is 1 iff the row satisfies
/// rules[k]. Ties (x == t) evaluate to 0 for non-negated rules.
template <typename Derived>
Eigen::VectorXi apply_concepts(const Eigen::DenseBase<Derived>& row,
                               const std::vector<ConceptRule>& rules) {
  Eigen::VectorXi out(static_cast<Index>(rules.size()));
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const auto& r = rules[k];
    require(r.feature >= 0 && r.feature < row.size(), ErrorKind::structural,
            "concept rule feature index " + std::to_string(r.feature) +
                " out of range for row of width " +
                std::to_string(row.size()));
    out(static_cast<Index>(k)) = concept_value(r, row(r.feature)) ? 1 : 0;
  }
  return out;
}

template <typename Derived>
int predict(const Checklist& checklist, const Eigen::DenseBase<Derived>& row) {
  return apply_concepts(row, checklist.rules).sum() >= checklist.m_required
             ? 1
             : 0;
}

Eigen::VectorXi predict_all(const Checklist& checklist, const FeatureMatrix& X);

EvalCounts evaluate_counts(const Checklist& checklist, const FeatureMatrix& X,
                           const Labels& y);

/// Confusion counts from predictions.
EvalCounts count_predictions(const Eigen::VectorXi& y_hat, const Labels& y);

/// l+ + lambda l- + eps_n N + eps_m M. Every objective in the library is
/// evaluated through this one expression so equal integer inputs always give
/// bit-identical doubles.
inline double objective_value(Index l_plus, Index l_minus, int n_rules,
                              int m_required, const ObjectiveWeights& w) {
  return static_cast<double>(l_plus) +
         w.lambda * static_cast<double>(l_minus) +
         w.eps_n * static_cast<double>(n_rules) +
         w.eps_m * static_cast<double>(m_required);
}

inline double objective_value(const EvalCounts& counts, int n_rules,
                              int m_required, const ObjectiveWeights& w) {
  return objective_value(counts.l_plus, counts.l_minus, n_rules, m_required,
                         w);
}

/// Appends a negated copy of every column, named "neg(<name>)", so that
/// "x < -t" rules become expressible as "neg(x) > t".
FeatureMatrix with_negated_features(const FeatureMatrix& X);

// Serialization.
std::string to_text(const Checklist& checklist,
                    const std::vector<std::string>& names);
nlohmann::json to_json(const Checklist& checklist,
                       const std::vector<std::string>& names);
Checklist checklist_from_json(const nlohmann::json& j,
                              const std::vector<std::string>& names);

}  // namespace checklist
