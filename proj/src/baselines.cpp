#include "checklist/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "checklist/optimize.hpp"
#include "checklist/random.hpp"

namespace checklist {

DummyModel dummy_fit(const Labels& y_train) {
  require(y_train.size() > 0, ErrorKind::data, "dummy classifier needs labels");
  return {y_train.pos.size() > y_train.neg.size() ? 1 : 0};
}

Eigen::VectorXi dummy_predict(const DummyModel& model, Index n) {
  return Eigen::VectorXi::Constant(n, model.constant);
}

FeatureMatrix binarize_at(const FeatureMatrix& X,
                          const std::vector<double>& thresholds) {
  require(static_cast<Index>(thresholds.size()) == X.cols(),
          ErrorKind::structural,
          "binarize_at needs one threshold per column (got " +
              std::to_string(thresholds.size()) + " for " +
              std::to_string(X.cols()) + ")");
  FeatureMatrix B;
  B.names = X.names;
  B.values.resize(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    const double t = thresholds[static_cast<std::size_t>(j)];
    require(std::isfinite(t), ErrorKind::structural, "thresholds must be finite");
    B.values.col(j) = (X.values.col(j).array() > t).cast<double>();
  }
  return B;
}

std::vector<double> column_means(const FeatureMatrix& X) {
  std::vector<double> out(static_cast<std::size_t>(X.cols()));
  for (Index j = 0; j < X.cols(); ++j) out[static_cast<std::size_t>(j)] = X.values.col(j).mean();
  return out;
}

void UnitWeightingConfig::validate() const {
  require(beta >= 0.0, ErrorKind::config, "beta must be >= 0");
}

std::vector<ConceptRule> unit_weight_rules(const Eigen::VectorXd& weights,
                                           double beta,
                                           const std::vector<double>& thresholds) {
  require(static_cast<Index>(thresholds.size()) == weights.size(),
          ErrorKind::structural, "one threshold per weight is required");
  std::vector<ConceptRule> rules;
  for (Index j = 0; j < weights.size(); ++j) {
    const double w = weights(j);
    if (std::abs(w) <= beta) continue;
    rules.push_back({j, thresholds[static_cast<std::size_t>(j)], w < 0.0});
  }
  return rules;
}

Checklist unit_weighting(const FeatureMatrix& binary_X, const Labels& y,
                         const TrainHyper& lr_hyper,
                         const UnitWeightingConfig& config,
                         const std::vector<double>& thresholds,
                         const ObjectiveWeights& weights) {
  config.validate();
  const LRModel lr = fit_logistic(binary_X, y, lr_hyper);
  Checklist c;
  c.rules = unit_weight_rules(lr.weights, config.beta, thresholds);
  require(!c.rules.empty(), ErrorKind::training,
          "unit weighting filtered out every feature; try a smaller beta");

  // Concepts evaluated on the binary matrix: a rule on a 0/1 column with
  // threshold 0.5 reproduces "x > t" on the raw column.
  Checklist on_binary = c;
  for (auto& r : on_binary.rules) r.threshold = 0.5;
  double best = std::numeric_limits<double>::infinity();
  for (int M = 1; M <= c.n_rules(); ++M) {
    on_binary.m_required = M;
    const double obj = objective_value(evaluate_counts(on_binary, binary_X, y),
                                       c.n_rules(), M, weights);
    if (obj < best) {
      best = obj;
      c.m_required = M;
    }
  }
  return c;
}

SetsModel sets_train(const FeatureMatrix& X, const Labels& y, double tau,
                     const SetsHyper& hyper) {
  require(tau > 0.0, ErrorKind::config, "SETS temperature must be > 0");
  require(X.rows() == y.size(), ErrorKind::structural,
          "SETS: feature matrix and labels disagree in size");
  hyper.lr.validate();
  const Index d = X.cols();
  const Eigen::VectorXd yd = y.y.cast<double>();

  Eigen::VectorXd phi0 = hyper.phi_init.size() == d
                             ? hyper.phi_init
                             : Eigen::VectorXd(X.values.colwise().mean().transpose());
  // theta = [phi; w; b]
  Eigen::VectorXd theta(2 * d + 1);
  theta << phi0, Eigen::VectorXd::Zero(d), 0.0;
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(2 * d + 1);
  for (Index j = 0; j < d; ++j) {
    const double mean = X.values.col(j).mean();
    const double var = (X.values.col(j).array() - mean).square().mean();
    scale(j) = hyper.freeze_phi ? 0.0 : std::max(var, 1e-12);
  }

  auto f = [&](const Eigen::VectorXd& th, Eigen::VectorXd& grad) {
    Eigen::VectorXd gphi, gw;
    double gb = 0.0;
    const double loss = sets_loss<double>(X.values, yd, th.head(d), th.segment(d, d),
                                          th(2 * d), tau, hyper.lr.l2_strength,
                                          &gphi, &gw, &gb);
    grad.head(d) = gphi;
    grad.segment(d, d) = gw;
    grad(2 * d) = gb;
    return loss;
  };
  DescentOptions opt;
  opt.step = hyper.lr.learning_rate;
  opt.max_iterations = hyper.lr.max_epochs;
  opt.tolerance = hyper.lr.tolerance;
  auto res = gradient_descent(f, theta, scale, opt);

  SetsModel m;
  m.phi = res.theta.head(d);
  m.tau = tau;
  m.weights = res.theta.segment(d, d);
  m.bias = res.theta(2 * d);
  require(m.phi.allFinite() && m.weights.allFinite(), ErrorKind::training,
          "SETS training produced non-finite parameters");
  return m;
}

double sets_training_loss(const SetsModel& model, const FeatureMatrix& X,
                          const Labels& y, double l2) {
  const Eigen::VectorXd yd = y.y.cast<double>();
  return sets_loss<double>(X.values, yd, model.phi, model.weights, model.bias,
                           model.tau, l2);
}

Checklist sets_to_checklist(const SetsModel& model, const FeatureMatrix& X,
                            const Labels& y, const TrainHyper& lr_hyper,
                            const UnitWeightingConfig& config,
                            const ObjectiveWeights& weights) {
  std::vector<double> phi(model.phi.data(), model.phi.data() + model.phi.size());
  return unit_weighting(binarize_at(X, phi), y, lr_hyper, config, phi, weights);
}

Index MlpModel::parameter_count() const {
  return W1.size() + b1.size() + w2.size() + 1;
}

Eigen::VectorXd MlpModel::flatten() const {
  Eigen::VectorXd theta(parameter_count());
  theta << Eigen::Map<const Eigen::VectorXd>(W1.data(), W1.size()), b1, w2, b2;
  return theta;
}

void MlpModel::unflatten(const Eigen::VectorXd& theta) {
  require(theta.size() == parameter_count(), ErrorKind::structural,
          "MLP parameter vector has the wrong length");
  Index k = 0;
  W1 = Eigen::Map<const Eigen::MatrixXd>(theta.data(), W1.rows(), W1.cols());
  k += W1.size();
  b1 = theta.segment(k, b1.size());
  k += b1.size();
  w2 = theta.segment(k, w2.size());
  k += w2.size();
  b2 = theta(k);
}

MlpModel mlp_init(Index d, int hidden, std::uint64_t seed) {
  require(hidden >= 1 && d >= 1, ErrorKind::config,
          "MLP needs at least one input and one hidden unit");
  auto rng = make_rng(seed, "mlp-init");
  std::normal_distribution<double> normal(0.0, 1.0);
  MlpModel m;
  m.W1.resize(hidden, d);
  const double s1 = std::sqrt(2.0 / static_cast<double>(d));
  for (Index i = 0; i < m.W1.size(); ++i) m.W1.data()[i] = s1 * normal(rng);
  m.b1 = Eigen::VectorXd::Constant(hidden, 0.01);
  m.w2.resize(hidden);
  const double s2 = std::sqrt(1.0 / static_cast<double>(hidden));
  for (Index i = 0; i < m.w2.size(); ++i) m.w2(i) = s2 * normal(rng);
  m.b2 = 0.0;
  return m;
}

double mlp_loss(const MlpModel& model, const Eigen::MatrixXd& Z,
                const Eigen::VectorXd& y, double l2, MlpModel* grad) {
  const Index n = Z.rows();
  const Eigen::MatrixXd pre = (Z * model.W1.transpose()).rowwise() + model.b1.transpose();
  const Eigen::MatrixXd H = pre.cwiseMax(0.0);
  const Eigen::VectorXd t = (H * model.w2).array() + model.b2;
  double loss = 0.0;
  Eigen::VectorXd resid(n);
  for (Index i = 0; i < n; ++i) {
    loss += softplus(t(i)) - y(i) * t(i);
    resid(i) = sigmoid(t(i)) - y(i);
  }
  const double nd = static_cast<double>(n);
  loss = loss / nd + 0.5 * l2 * (model.W1.squaredNorm() + model.w2.squaredNorm());
  if (grad) {
    grad->w2 = H.transpose() * resid / nd + l2 * model.w2;
    grad->b2 = resid.sum() / nd;
    // Back through the rectifier: d pre = resid * w2^T masked by pre > 0.
    Eigen::MatrixXd dpre = (resid * model.w2.transpose()).array() *
                           (pre.array() > 0.0).cast<double>();
    grad->W1 = dpre.transpose() * Z / nd + l2 * model.W1;
    grad->b1 = dpre.colwise().sum().transpose() / nd;
  }
  return loss;
}

MlpModel mlp_train(const Eigen::MatrixXd& Z, const Labels& y,
                   const MlpHyper& hyper) {
  require(Z.rows() == y.size() && Z.rows() > 0, ErrorKind::structural,
          "MLP: design matrix and labels disagree in size");
  require(hyper.learning_rate > 0.0 && hyper.batch_size >= 1 && hyper.epochs >= 1,
          ErrorKind::config, "invalid MLP hyperparameters");
  MlpModel model = mlp_init(Z.cols(), hyper.hidden, hyper.seed);
  const Eigen::VectorXd yd = y.y.cast<double>();
  auto rng = make_rng(hyper.seed, "mlp-shuffle");

  std::vector<Index> order(static_cast<std::size_t>(Z.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  Eigen::VectorXd velocity = Eigen::VectorXd::Zero(model.parameter_count());
  MlpModel grad = model;
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(hyper.batch_size)) {
      const std::size_t stop =
          std::min(order.size(), start + static_cast<std::size_t>(hyper.batch_size));
      const auto m = static_cast<Index>(stop - start);
      Eigen::MatrixXd Zb(m, Z.cols());
      Eigen::VectorXd yb(m);
      for (Index k = 0; k < m; ++k) {
        Zb.row(k) = Z.row(order[start + static_cast<std::size_t>(k)]);
        yb(k) = yd(order[start + static_cast<std::size_t>(k)]);
      }
      const double loss = mlp_loss(model, Zb, yb, hyper.l2, &grad);
      require(std::isfinite(loss), ErrorKind::training, "MLP training diverged");
      velocity = hyper.momentum * velocity - hyper.learning_rate * grad.flatten();
      model.unflatten(model.flatten() + velocity);
    }
  }
  return model;
}

double mlp_score(const MlpModel& model, const Eigen::RowVectorXd& row) {
  const Eigen::VectorXd h = (model.W1 * row.transpose() + model.b1).cwiseMax(0.0);
  return sigmoid(model.w2.dot(h) + model.b2);
}

Eigen::VectorXd mlp_score_all(const MlpModel& model, const Eigen::MatrixXd& Z) {
  Eigen::VectorXd out(Z.rows());
  for (Index i = 0; i < Z.rows(); ++i) out(i) = mlp_score(model, Z.row(i));
  return out;
}

}  // namespace checklist
