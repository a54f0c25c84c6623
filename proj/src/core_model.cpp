#include "checklist/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "checklist/io.hpp"

namespace checklist {

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd v, std::vector<std::string> n)
    : values(std::move(v)), names(std::move(n)) {}

void FeatureMatrix::validate() const {
  require(rows() >= 1, ErrorKind::structural, "feature matrix has no rows");
  require(cols() >= 1, ErrorKind::structural, "feature matrix has no columns");
  require(static_cast<Index>(names.size()) == cols(), ErrorKind::structural,
          "feature name count " + std::to_string(names.size()) +
              " does not match column count " + std::to_string(cols()));
  std::set<std::string> seen(names.begin(), names.end());
  require(seen.size() == names.size(), ErrorKind::structural,
          "feature names are not unique");
  require(values.allFinite(), ErrorKind::data,
          "feature matrix contains non-finite values");
}

FeatureMatrix FeatureMatrix::select_columns(
    const std::vector<Index>& cols) const {
  FeatureMatrix out;
  out.values.resize(rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    require(cols[k] >= 0 && cols[k] < this->cols(), ErrorKind::structural,
            "column index out of range");
    out.values.col(static_cast<Index>(k)) = values.col(cols[k]);
    out.names.push_back(names[static_cast<std::size_t>(cols[k])]);
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(const std::vector<Index>& r) const {
  FeatureMatrix out;
  out.names = names;
  out.values.resize(static_cast<Index>(r.size()), cols());
  for (std::size_t k = 0; k < r.size(); ++k) {
    require(r[k] >= 0 && r[k] < rows(), ErrorKind::structural,
            "row index out of range");
    out.values.row(static_cast<Index>(k)) = values.row(r[k]);
  }
  return out;
}

std::optional<Index> FeatureMatrix::find(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<Index>(it - names.begin());
}

Labels::Labels(Eigen::VectorXi values) : y(std::move(values)) {
  for (Index i = 0; i < y.size(); ++i) {
    require(y(i) == 0 || y(i) == 1, ErrorKind::data,
            "label at row " + std::to_string(i) + " is not in {0,1}");
    (y(i) == 1 ? pos : neg).push_back(i);
  }
}

Labels Labels::from(const std::vector<int>& values) {
  Eigen::VectorXi v(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    v(static_cast<Index>(i)) = values[i];
  return Labels(std::move(v));
}

Labels Labels::select(const std::vector<Index>& rows) const {
  Eigen::VectorXi v(static_cast<Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) v(static_cast<Index>(k)) = y(rows[k]);
  return Labels(std::move(v));
}

void Checklist::validate(Index d) const {
  require(m_required >= 1, ErrorKind::structural,
          "checklist requires M >= 1, got " + std::to_string(m_required));
  require(m_required <= n_rules(), ErrorKind::structural,
          "checklist requires M <= N, got M=" + std::to_string(m_required) +
              " N=" + std::to_string(n_rules()));
  std::set<Index> seen;
  for (const auto& r : rules) {
    require(r.feature >= 0 && r.feature < d, ErrorKind::structural,
            "rule feature index " + std::to_string(r.feature) +
                " out of range");
    require(std::isfinite(r.threshold), ErrorKind::structural,
            "rule threshold is not finite");
    require(seen.insert(r.feature).second, ErrorKind::structural,
            "more than one rule on feature " + std::to_string(r.feature));
  }
}

void ObjectiveWeights::validate() const {
  for (double v : {lambda, eps_n, eps_m})
    require(std::isfinite(v) && v >= 0.0, ErrorKind::config,
            "objective weights must be finite and non-negative");
}

ObjectiveWeights ObjectiveWeights::with_default_eps(double lambda, Index d) {
  const double eps = std::min(1.0, lambda) / (4.0 * static_cast<double>(std::max<Index>(d, 1)));
  return {lambda, eps, eps};
}

Eigen::VectorXi predict_all(const Checklist& checklist,
                            const FeatureMatrix& X) {
  Eigen::VectorXi out(X.rows());
  for (Index i = 0; i < X.rows(); ++i) out(i) = predict(checklist, X.values.row(i));
  return out;
}

EvalCounts count_predictions(const Eigen::VectorXi& y_hat, const Labels& y) {
  require(y_hat.size() == y.size(), ErrorKind::structural,
          "prediction count " + std::to_string(y_hat.size()) +
              " does not match label count " + std::to_string(y.size()));
  EvalCounts c;
  for (Index i = 0; i < y.size(); ++i) {
    const bool truth = y.y(i) == 1;
    const bool pred = y_hat(i) == 1;
    if (truth && pred) ++c.tp;
    if (truth && !pred) ++c.fn;
    if (!truth && pred) ++c.fp;
    if (!truth && !pred) ++c.tn;
  }
  c.l_plus = c.fn;
  c.l_minus = c.fp;
  return c;
}

EvalCounts evaluate_counts(const Checklist& checklist, const FeatureMatrix& X,
                           const Labels& y) {
  require(X.rows() == y.size(), ErrorKind::structural,
          "feature matrix has " + std::to_string(X.rows()) +
              " rows but labels have " + std::to_string(y.size()));
  return count_predictions(predict_all(checklist, X), y);
}

FeatureMatrix with_negated_features(const FeatureMatrix& X) {
  FeatureMatrix out;
  out.values.resize(X.rows(), 2 * X.cols());
  out.values << X.values, -X.values;
  out.names = X.names;
  for (const auto& n : X.names) out.names.push_back("neg(" + n + ")");
  return out;
}

namespace {

const std::string& name_of(const std::vector<std::string>& names, Index j) {
  require(j >= 0 && j < static_cast<Index>(names.size()),
          ErrorKind::structural, "rule refers to unknown feature index");
  return names[static_cast<std::size_t>(j)];
}

}  // namespace

std::string to_text(const Checklist& checklist,
                    const std::vector<std::string>& names) {
  std::ostringstream out;
  for (const auto& r : checklist.rules) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", r.threshold);
    out << name_of(names, r.feature) << (r.negated ? " <= " : " > ") << buf
        << '\n';
  }
  out << checklist.m_required << " of " << checklist.n_rules()
      << " required\n";
  return out.str();
}

nlohmann::json to_json(const Checklist& checklist,
                       const std::vector<std::string>& names) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : checklist.rules) {
    rules.push_back({{"feature", name_of(names, r.feature)},
                     {"threshold", r.threshold},
                     {"direction", r.negated ? "<=" : ">"}});
  }
  return {{"rules", rules},
          {"m_required", checklist.m_required},
          {"n_rules", checklist.n_rules()}};
}

Checklist checklist_from_json(const nlohmann::json& j,
                              const std::vector<std::string>& names) {
  Checklist c;
  c.m_required = j.at("m_required").get<int>();
  for (const auto& r : j.at("rules")) {
    const auto name = r.at("feature").get<std::string>();
    auto it = std::find(names.begin(), names.end(), name);
    require(it != names.end(), ErrorKind::structural,
            "checklist refers to unknown feature '" + name + "'");
    ConceptRule rule;
    rule.feature = static_cast<Index>(it - names.begin());
    rule.threshold = r.at("threshold").get<double>();
    rule.negated = r.value("direction", std::string(">")) == "<=";
    c.rules.push_back(rule);
  }
  return c;
}

}  // namespace checklist
