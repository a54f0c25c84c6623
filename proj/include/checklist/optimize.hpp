#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "checklist/error.hpp"

namespace checklist {

struct DescentOptions {
  double step = 1.0;
  double growth = 1.1;  // step multiplier after an accepted step
  int max_iterations = 5000;
  double tolerance = 1e-6;  // on the (scaled) gradient norm
};

struct DescentResult {
  Eigen::VectorXd theta;
  double loss = 0.0;
  int iterations = 0;
};

/// Full-batch gradient descent. `f(theta, grad)` returns the loss and fills
/// the gradient. Steps along -scale .* grad; a step that raises the loss is
/// rejected and the step halved, so accepted losses never increase.
template <typename Objective>
DescentResult gradient_descent(Objective&& f, Eigen::VectorXd theta,
                               const Eigen::VectorXd& scale,
                               const DescentOptions& opt) {
  Eigen::VectorXd grad(theta.size());
  double loss = f(theta, grad);
  require(std::isfinite(loss), ErrorKind::training,
          "loss is not finite at the initial parameters");
  double step = opt.step;
  int it = 0;
  Eigen::VectorXd trial_grad(theta.size());
  for (; it < opt.max_iterations; ++it) {
    const Eigen::VectorXd dir = scale.cwiseProduct(grad);
    if (std::sqrt(dir.dot(grad)) <= opt.tolerance) break;
    Eigen::VectorXd trial = theta - step * dir;
    const double trial_loss = f(trial, trial_grad);
    require(!std::isnan(trial_loss), ErrorKind::training,
            "training diverged (loss is NaN)");
    if (trial_loss > loss) {
      step *= 0.5;
      if (step < 1e-14) break;
      continue;
    }
    theta = std::move(trial);
    std::swap(grad, trial_grad);
    loss = trial_loss;
    step *= opt.growth;
  }
  return {std::move(theta), loss, it};
}

}  // namespace checklist
