#include "leap/knn.hpp"

#include <algorithm>
#include <utility>

namespace leap {

std::vector<double> KnnModel::predict_proba(const Matrix& x) const {
  const std::size_t n_train = train.rows;
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(params.k), n_train);
  std::vector<double> out(x.rows, 0.0);
  std::vector<std::pair<double, std::int32_t>> dist(n_train);

  for (std::size_t q = 0; q < x.rows; ++q) {
    const double* query = x.row(q);
    for (std::size_t i = 0; i < n_train; ++i) {
      const double* row = train.row(i);
      double d2 = 0.0;
      for (std::size_t c = 0; c < train.cols; ++c) {
        const double diff = query[c] - row[c];
        d2 += diff * diff;
      }
      dist[i] = {d2, static_cast<std::int32_t>(i)};
    }
    // (distance, train index) pairs order ties by index.
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     dist.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k; ++i) {
      positives += labels[static_cast<std::size_t>(dist[i].second)];
    }
    out[q] = static_cast<double>(positives) / static_cast<double>(k);
  }
  return out;
}

KnnModel fit_knn(const Matrix& x, const std::vector<std::uint8_t>& y, const KnnParams& params) {
  KnnModel model;
  model.params = params;
  model.train = x;
  model.labels = y;
  return model;
}

}  // namespace leap
