#pragma once

#include <vector>

#include "leap/matrix.hpp"

namespace leap {

// Per-dimension standardization statistics, learned from training rows only.
// Uses population standard deviation; zero-variance dimensions keep divisor 1
// so constant columns map to 0 instead of NaN.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> std;

  bool operator==(const Scaler&) const = default;
};

Scaler scaler_fit(const Matrix& train);  // throws DataError on empty input
Matrix scaler_apply(const Scaler& scaler, const Matrix& x);
void scaler_apply_row(const Scaler& scaler, const double* in, double* out);

}  // namespace leap
