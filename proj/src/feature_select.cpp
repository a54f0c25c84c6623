#include "checklist/feature_select.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "checklist/io.hpp"
#include "checklist/optimize.hpp"

namespace checklist {

void TrainHyper::validate() const {
  require(learning_rate > 0.0, ErrorKind::config, "learning_rate must be > 0");
  require(tolerance > 0.0, ErrorKind::config, "tolerance must be > 0");
  require(l2_strength >= 0.0, ErrorKind::config, "l2_strength must be >= 0");
  require(max_epochs >= 1, ErrorKind::config, "max_epochs must be >= 1");
}

Eigen::MatrixXd Standardization::transform(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd out(X.rows(), static_cast<Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto c = static_cast<Index>(k);
    out.col(c) = (X.col(kept[k]).array() - means(c)) / sds(c);
  }
  return out;
}

Standardization standardize(const FeatureMatrix& X) {
  require(X.values.allFinite(), ErrorKind::data,
          "standardize requires finite values");
  Standardization s;
  std::vector<double> means, sds;
  for (Index j = 0; j < X.cols(); ++j) {
    const double mean = X.values.col(j).mean();
    const double sd =
        std::sqrt((X.values.col(j).array() - mean).square().mean());
    if (!(sd > 0.0)) {
      s.dropped.push_back(X.names[static_cast<std::size_t>(j)]);
      continue;
    }
    s.kept.push_back(j);
    means.push_back(mean);
    sds.push_back(sd);
  }
  s.means = Eigen::Map<Eigen::VectorXd>(means.data(), static_cast<Index>(means.size()));
  s.sds = Eigen::Map<Eigen::VectorXd>(sds.data(), static_cast<Index>(sds.size()));
  s.Z.values = s.transform(X.values);
  for (auto j : s.kept) s.Z.names.push_back(X.names[static_cast<std::size_t>(j)]);
  return s;
}

double LRModel::score(const Eigen::RowVectorXd& row) const {
  const Eigen::VectorXd z =
      (row.transpose() - feature_means).cwiseQuotient(feature_sds);
  return sigmoid(weights.dot(z) + bias);
}

Eigen::VectorXd LRModel::score_all(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd out(X.rows());
  for (Index i = 0; i < X.rows(); ++i) out(i) = score(X.row(i));
  return out;
}

LRModel train_logistic(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                       const TrainHyper& hyper) {
  hyper.validate();
  require(Z.rows() == y.size() && Z.rows() > 0, ErrorKind::structural,
          "train_logistic: design matrix and labels disagree in size");
  const Index d = Z.cols();
  auto f = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& grad) {
    Eigen::VectorXd gw;
    double gb = 0.0;
    const double loss = logistic_loss<double>(Z, y, theta.head(d), theta(d),
                                              hyper.l2_strength, &gw, &gb);
    grad.head(d) = gw;
    grad(d) = gb;
    return loss;
  };
  DescentOptions opt;
  opt.step = hyper.learning_rate;
  opt.max_iterations = hyper.max_epochs;
  opt.tolerance = hyper.tolerance;
  auto res = gradient_descent(f, Eigen::VectorXd::Zero(d + 1),
                              Eigen::VectorXd::Ones(d + 1), opt);

  LRModel model;
  model.weights = res.theta.head(d);
  model.bias = res.theta(d);
  model.feature_means = Eigen::VectorXd::Zero(d);
  model.feature_sds = Eigen::VectorXd::Ones(d);
  model.epochs_run = res.iterations;
  return model;
}

LRModel fit_logistic(const FeatureMatrix& X, const Labels& y,
                     const TrainHyper& hyper) {
  require(X.rows() == y.size(), ErrorKind::structural,
          "fit_logistic: feature matrix and labels disagree in size");
  auto s = standardize(X);
  const Eigen::VectorXd yd = y.y.cast<double>();
  LRModel inner = train_logistic(s.Z.values, yd, hyper);

  LRModel model;
  model.weights = Eigen::VectorXd::Zero(X.cols());
  model.feature_means = X.values.colwise().mean().transpose();
  model.feature_sds = Eigen::VectorXd::Ones(X.cols());
  model.bias = inner.bias;
  model.epochs_run = inner.epochs_run;
  for (std::size_t k = 0; k < s.kept.size(); ++k) {
    const auto c = static_cast<Index>(k);
    model.weights(s.kept[k]) = inner.weights(c);
    model.feature_means(s.kept[k]) = s.means(c);
    model.feature_sds(s.kept[k]) = s.sds(c);
  }
  return model;
}

std::vector<Index> select_top_k(const LRModel& model, Index k) {
  const Index d = model.weights.size();
  require(k >= 0 && k <= d, ErrorKind::config,
          "cannot select " + std::to_string(k) + " features out of " +
              std::to_string(d));
  std::vector<Index> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    return std::abs(model.weights(a)) > std::abs(model.weights(b));
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

std::string feature_manifest_csv(const LRModel& model,
                                 const std::vector<Index>& selected,
                                 const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "rank,feature_name,coefficient\n";
  for (std::size_t r = 0; r < selected.size(); ++r) {
    out << r + 1 << ',' << names[static_cast<std::size_t>(selected[r])] << ','
        << io::format_double(model.weights(selected[r])) << '\n';
  }
  return out.str();
}

}  // namespace checklist
