#include "leap/mlp.hpp"

#include <cmath>

#include "leap/boosting.hpp"  // sigmoid
#include "leap/error.hpp"

namespace leap {

MlpNetwork::MlpNetwork(std::size_t input_dim) : input_dim_(input_dim) {
  const std::size_t total = kHidden1 * input_dim + kHidden1 + kHidden2 * kHidden1 + kHidden2 +
                            kHidden2 + 1;
  params.assign(total, 0.0);
}

void MlpNetwork::init_weights(Rng& rng) {
  // He-style scaling for the rectified layers, conservative for the output.
  const double s1 = std::sqrt(2.0 / static_cast<double>(input_dim_));
  const double s2 = std::sqrt(2.0 / static_cast<double>(kHidden1));
  const double s3 = std::sqrt(1.0 / static_cast<double>(kHidden2));
  for (std::size_t i = 0; i < kHidden1 * input_dim_; ++i) params[w1() + i] = s1 * rng.normal();
  for (std::size_t i = 0; i < kHidden2 * kHidden1; ++i) params[w2() + i] = s2 * rng.normal();
  for (std::size_t i = 0; i < kHidden2; ++i) params[w3() + i] = s3 * rng.normal();
  // biases stay zero
}

double MlpNetwork::predict_row(const double* row) const {
  double h1[kHidden1];
  double h2[kHidden2];
  const double* p = params.data();
  for (std::size_t j = 0; j < kHidden1; ++j) {
    double z = p[b1() + j];
    const double* w = p + w1() + j * input_dim_;
    for (std::size_t f = 0; f < input_dim_; ++f) z += w[f] * row[f];
    h1[j] = z > 0.0 ? z : 0.0;
  }
  for (std::size_t j = 0; j < kHidden2; ++j) {
    double z = p[b2() + j];
    const double* w = p + w2() + j * kHidden1;
    for (std::size_t f = 0; f < kHidden1; ++f) z += w[f] * h1[f];
    h2[j] = z > 0.0 ? z : 0.0;
  }
  double z = p[b3()];
  const double* w = p + w3();
  for (std::size_t f = 0; f < kHidden2; ++f) z += w[f] * h2[f];
  return sigmoid(z);
}

double MlpNetwork::loss_and_grad(const Matrix& x, std::span<const std::uint8_t> y,
                                 std::span<const std::size_t> rows,
                                 std::vector<double>* grad) const {
  if (grad) grad->assign(params.size(), 0.0);
  const double* p = params.data();
  double loss = 0.0;

  double z1[kHidden1], h1[kHidden1], z2[kHidden2], h2[kHidden2];
  double d1[kHidden1], d2[kHidden2];

  for (const std::size_t r : rows) {
    const double* row = x.row(r);
    for (std::size_t j = 0; j < kHidden1; ++j) {
      double z = p[b1() + j];
      const double* w = p + w1() + j * input_dim_;
      for (std::size_t f = 0; f < input_dim_; ++f) z += w[f] * row[f];
      z1[j] = z;
      h1[j] = z > 0.0 ? z : 0.0;
    }
    for (std::size_t j = 0; j < kHidden2; ++j) {
      double z = p[b2() + j];
      const double* w = p + w2() + j * kHidden1;
      for (std::size_t f = 0; f < kHidden1; ++f) z += w[f] * h1[f];
      z2[j] = z;
      h2[j] = z > 0.0 ? z : 0.0;
    }
    double z3 = p[b3()];
    {
      const double* w = p + w3();
      for (std::size_t f = 0; f < kHidden2; ++f) z3 += w[f] * h2[f];
    }
    const double prob = sigmoid(z3);
    const double target = static_cast<double>(y[r]);
    loss += z3 >= 0.0 ? std::log1p(std::exp(-z3)) + (1.0 - target) * z3
                      : std::log1p(std::exp(z3)) - target * z3;
    if (!grad) continue;

    const double d3 = prob - target;  // dLoss/dz3
    std::vector<double>& g = *grad;
    g[b3()] += d3;
    {
      const double* w = p + w3();
      for (std::size_t f = 0; f < kHidden2; ++f) {
        g[w3() + f] += d3 * h2[f];
        d2[f] = z2[f] > 0.0 ? d3 * w[f] : 0.0;
      }
    }
    for (std::size_t j = 0; j < kHidden1; ++j) d1[j] = 0.0;
    for (std::size_t j = 0; j < kHidden2; ++j) {
      if (d2[j] == 0.0) continue;
      g[b2() + j] += d2[j];
      const double* w = p + w2() + j * kHidden1;
      double* gw = g.data() + w2() + j * kHidden1;
      for (std::size_t f = 0; f < kHidden1; ++f) {
        gw[f] += d2[j] * h1[f];
        d1[f] += d2[j] * w[f];
      }
    }
    for (std::size_t j = 0; j < kHidden1; ++j) {
      if (z1[j] <= 0.0 || d1[j] == 0.0) continue;
      g[b1() + j] += d1[j];
      double* gw = g.data() + w1() + j * input_dim_;
      for (std::size_t f = 0; f < input_dim_; ++f) gw[f] += d1[j] * row[f];
    }
  }

  const double inv = rows.empty() ? 0.0 : 1.0 / static_cast<double>(rows.size());
  loss *= inv;
  if (grad) {
    for (double& g : *grad) g *= inv;
  }
  return loss;
}

std::vector<double> MlpModel::predict_proba(const Matrix& x) const {
  std::vector<double> out(x.rows);
  for (std::size_t r = 0; r < x.rows; ++r) out[r] = network.predict_row(x.row(r));
  return out;
}

MlpModel fit_mlp(const Matrix& x, const std::vector<std::uint8_t>& y, std::uint64_t seed,
                 const MlpParams& params) {
  MlpModel model;
  model.params = params;
  model.network = MlpNetwork(x.cols);

  Rng rng(Rng::derive(seed, 0x317a9));
  model.network.init_weights(rng);

  const std::size_t n_params = model.network.n_params();
  std::vector<double> grad(n_params, 0.0);
  std::vector<double> m(n_params, 0.0);
  std::vector<double> v(n_params, 0.0);
  std::vector<std::size_t> order(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) order[i] = i;

  long long t = 0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < x.rows;
         start += static_cast<std::size_t>(params.batch_size)) {
      const std::size_t len =
          std::min<std::size_t>(static_cast<std::size_t>(params.batch_size), x.rows - start);
      model.network.loss_and_grad(x, y, {order.data() + start, len}, &grad);

      ++t;
      const double bc1 = 1.0 - std::pow(params.beta1, static_cast<double>(t));
      const double bc2 = 1.0 - std::pow(params.beta2, static_cast<double>(t));
      for (std::size_t i = 0; i < n_params; ++i) {
        m[i] = params.beta1 * m[i] + (1.0 - params.beta1) * grad[i];
        v[i] = params.beta2 * v[i] + (1.0 - params.beta2) * grad[i] * grad[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        model.network.params[i] -= params.learning_rate * m_hat /
                                   (std::sqrt(v_hat) + params.epsilon);
      }
    }
  }
  return model;
}

}  // namespace leap
