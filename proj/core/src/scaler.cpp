#include "leap/scaler.hpp"

#include <cmath>

#include "leap/error.hpp"

namespace leap {

Scaler scaler_fit(const Matrix& train) {
  if (train.rows == 0 || train.cols == 0) {
    throw DataError("scaler requires a non-empty training matrix");
  }
  Scaler s;
  s.mean.assign(train.cols, 0.0);
  s.std.assign(train.cols, 0.0);
  const double n = static_cast<double>(train.rows);
  for (std::size_t r = 0; r < train.rows; ++r) {
    const double* row = train.row(r);
    for (std::size_t c = 0; c < train.cols; ++c) s.mean[c] += row[c];
  }
  for (std::size_t c = 0; c < train.cols; ++c) s.mean[c] /= n;
  for (std::size_t r = 0; r < train.rows; ++r) {
    const double* row = train.row(r);
    for (std::size_t c = 0; c < train.cols; ++c) {
      const double d = row[c] - s.mean[c];
      s.std[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < train.cols; ++c) {
    s.std[c] = std::sqrt(s.std[c] / n);
    if (s.std[c] == 0.0) s.std[c] = 1.0;  // constant column: center only
  }
  return s;
}

void scaler_apply_row(const Scaler& scaler, const double* in, double* out) {
  for (std::size_t c = 0; c < scaler.mean.size(); ++c) {
    out[c] = (in[c] - scaler.mean[c]) / scaler.std[c];
  }
}

Matrix scaler_apply(const Scaler& scaler, const Matrix& x) {
  if (x.cols != scaler.mean.size()) {
    throw DataError("scaler dimension mismatch");
  }
  Matrix out(x.rows, x.cols);
  for (std::size_t r = 0; r < x.rows; ++r) {
    scaler_apply_row(scaler, x.row(r), out.row(r));
  }
  return out;
}

}  // namespace leap
