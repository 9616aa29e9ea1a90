#pragma once

#include <cstdint>
#include <vector>

#include "leap/model.hpp"

namespace leap {

// k-nearest-neighbour vote, k=15, Euclidean distance on the (standardized)
// training inputs.  Distance ties are broken by training-row index.
struct KnnParams {
  int k = 15;
};

class KnnModel : public Model {
 public:
  std::vector<double> predict_proba(const Matrix& x) const override;

  KnnParams params;
  Matrix train;                    // rows in their training order
  std::vector<std::uint8_t> labels;
};

KnnModel fit_knn(const Matrix& x, const std::vector<std::uint8_t>& y, const KnnParams& params);

}  // namespace leap
