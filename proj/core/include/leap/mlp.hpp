#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leap/matrix.hpp"
#include "leap/model.hpp"
#include "leap/rng.hpp"

namespace leap {

// Feed-forward network d -> 64 -> 32 -> 1 with rectified-linear hidden units
// and a logistic output.  Parameters live in one flat vector (weights then
// bias per layer) so the optimizer and the finite-difference gradient check
// share a single representation.
class MlpNetwork {
 public:
  static constexpr std::size_t kHidden1 = 64;
  static constexpr std::size_t kHidden2 = 32;

  MlpNetwork() = default;
  explicit MlpNetwork(std::size_t input_dim);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t n_params() const { return params.size(); }

  void init_weights(Rng& rng);

  double predict_row(const double* row) const;

  // Mean cross-entropy over the given rows; fills grad (same length as
  // params) with the analytic gradient when grad != nullptr.
  double loss_and_grad(const Matrix& x, std::span<const std::uint8_t> y,
                       std::span<const std::size_t> rows, std::vector<double>* grad) const;

  std::vector<double> params;
  std::size_t input_dim_ = 0;

  // Flat-vector layout offsets.
  std::size_t w1() const { return 0; }
  std::size_t b1() const { return kHidden1 * input_dim_; }
  std::size_t w2() const { return b1() + kHidden1; }
  std::size_t b2() const { return w2() + kHidden2 * kHidden1; }
  std::size_t w3() const { return b2() + kHidden2; }
  std::size_t b3() const { return w3() + kHidden2; }
};

// Adaptive-moment optimizer at step 1e-3, mini-batch 64, exactly 300 epochs;
// the seed fixes the weight init and every epoch's shuffle.
struct MlpParams {
  int epochs = 300;
  int batch_size = 64;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class MlpModel : public Model {
 public:
  std::vector<double> predict_proba(const Matrix& x) const override;

  MlpParams params;
  MlpNetwork network;
};

MlpModel fit_mlp(const Matrix& x, const std::vector<std::uint8_t>& y, std::uint64_t seed,
                 const MlpParams& params);

}  // namespace leap
