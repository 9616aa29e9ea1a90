#pragma once

#include <cstdint>
#include <vector>

#include "leap/model.hpp"

namespace leap {

// Gaussian naive Bayes with variance smoothing: every per-class variance is
// raised by 1e-9 times the largest overall feature variance.
class GaussianNbModel : public Model {
 public:
  std::vector<double> predict_proba(const Matrix& x) const override;

  double log_prior[2] = {0.0, 0.0};
  std::vector<double> mean[2];  // per class, per feature
  std::vector<double> var[2];   // smoothed population variance
};

GaussianNbModel fit_gaussian_nb(const Matrix& x, const std::vector<std::uint8_t>& y);

}  // namespace leap
