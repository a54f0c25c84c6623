#pragma once

// Comparison models for the checklist solver. SETS is a logistic regression
// over sigmoid-thresholded features. The mean-threshold ILP is solve_fixed_thresholds from solver.hpp.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "checklist/core_model.hpp"
#include "checklist/feature_select.hpp"

namespace checklist {

struct DummyModel {
  int constant = 0;
};

/// Majority training class; a tie predicts 0.
DummyModel dummy_fit(const Labels& y_train);
Eigen::VectorXi dummy_predict(const DummyModel& model, Index n);

/// Entry (i, j) is 1 iff X(i, j) > thresholds[j].
FeatureMatrix binarize_at(const FeatureMatrix& X,
                          const std::vector<double>& thresholds);

std::vector<double> column_means(const FeatureMatrix& X);

struct UnitWeightingConfig {
  double beta = 0.1;

  void validate() const;
};

/// Rules from binary-feature LR weights: |w| <= beta dropped, positive
/// weights give "x > t", negative weights the complement "x <= t".
std::vector<ConceptRule> unit_weight_rules(const Eigen::VectorXd& weights,
                                           double beta,
                                           const std::vector<double>& thresholds);

/// Trains LR on binary_X and turns its weights into rules. M in [1, N]
/// minimizes the training objective (ties to the smaller M).
Checklist unit_weighting(const FeatureMatrix& binary_X, const Labels& y,
                         const TrainHyper& lr_hyper,
                         const UnitWeightingConfig& config,
                         const std::vector<double>& thresholds,
                         const ObjectiveWeights& weights);

struct SetsModel {
  Eigen::VectorXd phi;  // thresholds in raw feature units
  double tau = 0.1;
  Eigen::VectorXd weights;
  double bias = 0.0;
};

struct SetsHyper {
  TrainHyper lr;
  bool freeze_phi = false;
  Eigen::VectorXd phi_init;  // empty: column means
};

/// Mean log loss of an LR over sigma((x - phi) / tau) features plus
/// (l2 / 2) ||w||^2, with gradients for every parameter.
template <typename Scalar>
Scalar sets_loss(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& X,
                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y,
                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& phi,
                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& w, Scalar b,
                 Scalar tau, Scalar l2,
                 Eigen::Matrix<Scalar, Eigen::Dynamic, 1>* grad_phi = nullptr,
                 Eigen::Matrix<Scalar, Eigen::Dynamic, 1>* grad_w = nullptr,
                 Scalar* grad_b = nullptr) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Index n = X.rows();
  const Index d = X.cols();
  Mat S(n, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < n; ++i) S(i, j) = sigmoid((X(i, j) - phi(j)) / tau);
  Vec gw;
  Scalar gb(0);
  const Scalar loss = logistic_loss<Scalar>(S, y, w, b, l2, &gw, &gb);
  if (grad_w) *grad_w = gw;
  if (grad_b) *grad_b = gb;
  if (grad_phi) {
    // dL/dphi_j = sum_i r_i w_j s_ij (1 - s_ij) (-1 / tau) / n
    Vec t = (S * w).array() + b;
    Vec resid(n);
    for (Index i = 0; i < n; ++i) resid(i) = sigmoid(t(i)) - y(i);
    grad_phi->resize(d);
    for (Index j = 0; j < d; ++j) {
      Scalar acc(0);
      for (Index i = 0; i < n; ++i) acc += resid(i) * S(i, j) * (Scalar(1) - S(i, j));
      (*grad_phi)(j) = -acc * w(j) / (tau * static_cast<Scalar>(n));
    }
  }
  return loss;
}

/// Gradient descent on thresholds and logistic layer together, from
/// phi = column means and w = 0. Each phi step is scaled by its column's
/// variance.
SetsModel sets_train(const FeatureMatrix& X, const Labels& y, double tau,
                     const SetsHyper& hyper);

double sets_training_loss(const SetsModel& model, const FeatureMatrix& X,
                          const Labels& y, double l2);

/// Binarizes at phi and applies unit weighting.
Checklist sets_to_checklist(const SetsModel& model, const FeatureMatrix& X,
                            const Labels& y, const TrainHyper& lr_hyper,
                            const UnitWeightingConfig& config,
                            const ObjectiveWeights& weights);

struct MlpHyper {
  int hidden = 32;
  double learning_rate = 0.05;
  double momentum = 0.9;
  int epochs = 200;
  int batch_size = 64;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

/// One rectifier hidden layer and a logistic output unit.
struct MlpModel {
  Eigen::MatrixXd W1;  // hidden x d
  Eigen::VectorXd b1;
  Eigen::VectorXd w2;  // hidden
  double b2 = 0.0;

  Index parameter_count() const;
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& theta);
};

/// Seeded asymmetric initialization (He-scaled normal hidden weights).
MlpModel mlp_init(Index d, int hidden, std::uint64_t seed);

/// Mean log loss plus (l2 / 2)(||W1||^2 + ||w2||^2) over the given rows;
/// fills a gradient of the same shape when non-null.
double mlp_loss(const MlpModel& model, const Eigen::MatrixXd& Z,
                const Eigen::VectorXd& y, double l2, MlpModel* grad = nullptr);

MlpModel mlp_train(const Eigen::MatrixXd& Z, const Labels& y,
                   const MlpHyper& hyper);
double mlp_score(const MlpModel& model, const Eigen::RowVectorXd& row);
Eigen::VectorXd mlp_score_all(const MlpModel& model, const Eigen::MatrixXd& Z);

}  // namespace checklist
