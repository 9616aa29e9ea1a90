#include "leap/linear.hpp"

#include <algorithm>
#include <cmath>

#include "leap/boosting.hpp"  // sigmoid

namespace leap {
namespace {

struct Objective {
  const Matrix& x;
  const std::vector<std::uint8_t>& y;
  double lambda;

  // Mean log-loss plus the ridge term; gradient written when grad != nullptr.
  double eval(const std::vector<double>& w, double b, std::vector<double>* grad_w,
              double* grad_b) const {
    const std::size_t n = x.rows;
    const std::size_t d = x.cols;
    double loss = 0.0;
    if (grad_w) {
      grad_w->assign(d, 0.0);
      *grad_b = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = x.row(i);
      double z = b;
      for (std::size_t f = 0; f < d; ++f) z += w[f] * row[f];
      const double p = sigmoid(z);
      const double target = static_cast<double>(y[i]);
      // log(1+exp(-|z|)) form is stable for large |z|
      loss += z >= 0.0 ? std::log1p(std::exp(-z)) + (1.0 - target) * z
                       : std::log1p(std::exp(z)) - target * z;
      if (grad_w) {
        const double g = p - target;
        for (std::size_t f = 0; f < d; ++f) (*grad_w)[f] += g * row[f];
        *grad_b += g;
      }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    loss *= inv_n;
    for (std::size_t f = 0; f < d; ++f) loss += 0.5 * lambda * w[f] * w[f];
    if (grad_w) {
      for (std::size_t f = 0; f < d; ++f) {
        (*grad_w)[f] = (*grad_w)[f] * inv_n + lambda * w[f];
      }
      *grad_b *= inv_n;
    }
    return loss;
  }
};

}  // namespace

std::vector<double> LogisticModel::predict_proba(const Matrix& x) const {
  std::vector<double> out(x.rows, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double* row = x.row(i);
    double z = intercept;
    for (std::size_t f = 0; f < x.cols; ++f) z += weights[f] * row[f];
    out[i] = sigmoid(z);
  }
  return out;
}

LogisticModel fit_logistic(const Matrix& x, const std::vector<std::uint8_t>& y,
                           const LogisticParams& params) {
  LogisticModel model;
  model.params = params;
  model.weights.assign(x.cols, 0.0);
  model.intercept = 0.0;

  const Objective objective{x, y, 1.0 / static_cast<double>(x.rows)};
  std::vector<double> grad_w;
  double grad_b = 0.0;
  std::vector<double> trial_w(x.cols);
  double step = 1.0;

  double loss = objective.eval(model.weights, model.intercept, &grad_w, &grad_b);
  for (int it = 0; it < params.max_iterations; ++it) {
    double grad_norm = std::abs(grad_b);
    for (double g : grad_w) grad_norm = std::max(grad_norm, std::abs(g));
    if (grad_norm <= params.gradient_tolerance) {
      model.converged = true;
      model.iterations_used = it;
      return model;
    }

    double grad_sq = grad_b * grad_b;
    for (double g : grad_w) grad_sq += g * g;

    // Backtracking with an Armijo condition; the accepted step seeds the next
    // iteration (doubled) so well-scaled problems stay near full steps.
    step *= 2.0;
    double trial_b = 0.0;
    double trial_loss = 0.0;
    while (true) {
      for (std::size_t f = 0; f < x.cols; ++f) {
        trial_w[f] = model.weights[f] - step * grad_w[f];
      }
      trial_b = model.intercept - step * grad_b;
      trial_loss = objective.eval(trial_w, trial_b, nullptr, nullptr);
      if (trial_loss <= loss - 1e-4 * step * grad_sq || step < 1e-16) break;
      step *= 0.5;
    }
    model.weights.swap(trial_w);
    model.intercept = trial_b;
    loss = objective.eval(model.weights, model.intercept, &grad_w, &grad_b);
    model.iterations_used = it + 1;
  }
  return model;
}

}  // namespace leap
