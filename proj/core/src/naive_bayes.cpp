#include "leap/naive_bayes.hpp"

#include <algorithm>
#include <cmath>

namespace leap {

namespace {
constexpr double kVarSmoothing = 1e-9;
constexpr double kLog2Pi = 1.8378770664093454836;
}  // namespace

std::vector<double> GaussianNbModel::predict_proba(const Matrix& x) const {
  const std::size_t d = mean[0].size();
  std::vector<double> out(x.rows, 0.0);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double* row = x.row(r);
    double log_like[2];
    for (int c = 0; c < 2; ++c) {
      double acc = log_prior[c];
      for (std::size_t f = 0; f < d; ++f) {
        const double diff = row[f] - mean[c][f];
        acc -= 0.5 * (kLog2Pi + std::log(var[c][f]) + diff * diff / var[c][f]);
      }
      log_like[c] = acc;
    }
    const double m = std::max(log_like[0], log_like[1]);
    const double e0 = std::exp(log_like[0] - m);
    const double e1 = std::exp(log_like[1] - m);
    // Both likelihoods can underflow to -inf on degenerate fits; fall back to
    // indifference rather than NaN.
    out[r] = (e0 + e1) > 0.0 ? e1 / (e0 + e1) : 0.5;
  }
  return out;
}

GaussianNbModel fit_gaussian_nb(const Matrix& x, const std::vector<std::uint8_t>& y) {
  GaussianNbModel model;
  const std::size_t d = x.cols;
  std::size_t count[2] = {0, 0};
  for (int c = 0; c < 2; ++c) {
    model.mean[c].assign(d, 0.0);
    model.var[c].assign(d, 0.0);
  }
  for (std::size_t r = 0; r < x.rows; ++r) {
    const int c = y[r] ? 1 : 0;
    ++count[c];
    const double* row = x.row(r);
    for (std::size_t f = 0; f < d; ++f) model.mean[c][f] += row[f];
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t f = 0; f < d; ++f) model.mean[c][f] /= static_cast<double>(count[c]);
  }
  for (std::size_t r = 0; r < x.rows; ++r) {
    const int c = y[r] ? 1 : 0;
    const double* row = x.row(r);
    for (std::size_t f = 0; f < d; ++f) {
      const double diff = row[f] - model.mean[c][f];
      model.var[c][f] += diff * diff;
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (std::size_t f = 0; f < d; ++f) model.var[c][f] /= static_cast<double>(count[c]);
  }

  // Smoothing floor from the pooled per-feature variance.
  std::vector<double> pooled_mean(d, 0.0);
  for (std::size_t r = 0; r < x.rows; ++r) {
    const double* row = x.row(r);
    for (std::size_t f = 0; f < d; ++f) pooled_mean[f] += row[f];
  }
  for (std::size_t f = 0; f < d; ++f) pooled_mean[f] /= static_cast<double>(x.rows);
  double max_var = 0.0;
  for (std::size_t f = 0; f < d; ++f) {
    double v = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
      const double diff = x.at(r, f) - pooled_mean[f];
      v += diff * diff;
    }
    max_var = std::max(max_var, v / static_cast<double>(x.rows));
  }
  const double epsilon = std::max(kVarSmoothing * max_var, 1e-300);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t f = 0; f < d; ++f) model.var[c][f] += epsilon;
  }

  for (int c = 0; c < 2; ++c) {
    model.log_prior[c] =
        std::log(static_cast<double>(count[c]) / static_cast<double>(x.rows));
  }
  return model;
}

}  // namespace leap
