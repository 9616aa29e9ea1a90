#pragma once

#include <cstdint>
#include <vector>

#include "leap/model.hpp"

namespace leap {

// L2-regularized logistic regression on standardized inputs.  Objective:
// mean log-loss + (lambda/2)*||w||^2 with lambda = 1/n (strength-1.0
// equivalent), intercept unpenalized.  Optimized by full-batch gradient
// descent with backtracking line search until the gradient infinity-norm
// drops below 1e-6 or 5000 iterations.
struct LogisticParams {
  double gradient_tolerance = 1e-6;
  int max_iterations = 5000;
};

class LogisticModel : public Model {
 public:
  std::vector<double> predict_proba(const Matrix& x) const override;

  LogisticParams params;
  std::vector<double> weights;
  double intercept = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

LogisticModel fit_logistic(const Matrix& x, const std::vector<std::uint8_t>& y,
                           const LogisticParams& params);

}  // namespace leap
