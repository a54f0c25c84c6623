#pragma once

// Standardization, L2-regularized logistic regression trained by full-batch
// gradient descent, and top-k feature selection by |coefficient|.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "checklist/core_model.hpp"

namespace checklist {

struct TrainHyper {
  double learning_rate = 1.0;
  double l2_strength = 1e-3;
  int max_epochs = 5000;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Standardization {
  FeatureMatrix Z;               // retained columns, mean 0 / sd 1
  std::vector<Index> kept;       // source column of each retained column
  Eigen::VectorXd means;
  Eigen::VectorXd sds;
  std::vector<std::string> dropped;  // zero-variance columns

  /// Applies the fitted constants to new rows of the source matrix.
  Eigen::MatrixXd transform(const Eigen::MatrixXd& X) const;
};

Standardization standardize(const FeatureMatrix& X);

struct LRModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  Eigen::VectorXd feature_means;  // standardization constants; the model
  Eigen::VectorXd feature_sds;    // sees (x - mean) / sd
  int epochs_run = 0;

  /// P(y = 1 | row) for a row in the model's raw input units.
  double score(const Eigen::RowVectorXd& row) const;
  Eigen::VectorXd score_all(const Eigen::MatrixXd& X) const;
};

inline double softplus(double t) {
  return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

template <typename Scalar>
Scalar sigmoid(Scalar t) {
  using std::exp;
  return t >= Scalar(0) ? Scalar(1) / (Scalar(1) + exp(-t))
                        : exp(t) / (Scalar(1) + exp(t));
}

/// Mean log loss plus (l2 / 2) ||w||^2 (bias unpenalized). Fills the gradient
/// when the output pointers are non-null.
template <typename Scalar>
Scalar logistic_loss(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& Z,
                     const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y,
                     const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& w, Scalar b,
                     Scalar l2,
                     Eigen::Matrix<Scalar, Eigen::Dynamic, 1>* grad_w = nullptr,
                     Scalar* grad_b = nullptr) {
  using std::exp;
  using std::log1p;
  const Scalar n = static_cast<Scalar>(Z.rows());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> t = (Z * w).array() + b;
  Scalar loss(0);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> resid(Z.rows());
  for (Index i = 0; i < Z.rows(); ++i) {
    const Scalar ti = t(i);
    const Scalar sp = ti > Scalar(0) ? ti + log1p(exp(-ti)) : log1p(exp(ti));
    loss += sp - y(i) * ti;
    resid(i) = sigmoid(ti) - y(i);
  }
  loss = loss / n + l2 / Scalar(2) * w.squaredNorm();
  if (grad_w) *grad_w = Z.transpose() * resid / n + l2 * w;
  if (grad_b) *grad_b = resid.sum() / n;
  return loss;
}

/// Full-batch gradient descent from zero; a step that increases the loss is
/// rejected and the step size halved. Stops when the gradient norm falls
/// below tolerance or after max_epochs.
LRModel train_logistic(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                       const TrainHyper& hyper);

/// Standardizes X (dropping zero-variance columns, which get weight 0),
/// trains, and returns a model over all d columns in raw units.
LRModel fit_logistic(const FeatureMatrix& X, const Labels& y,
                     const TrainHyper& hyper);

/// Indices of the k largest |weights|, descending; ties go to the lower index.
std::vector<Index> select_top_k(const LRModel& model, Index k);

/// CSV (rank, feature_name, coefficient) for the selected columns.
std::string feature_manifest_csv(const LRModel& model,
                                 const std::vector<Index>& selected,
                                 const std::vector<std::string>& names);

}  // namespace checklist
