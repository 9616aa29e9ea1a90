#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leap/matrix.hpp"
#include "leap/scaler.hpp"

namespace leap {

enum class ModelKind : std::uint8_t {
  logistic_regression,
  random_forest,
  extra_trees,
  gbdt,
  adaboost,
  knn,
  naive_bayes,
  mlp,
};

struct ModelSpec {
  ModelKind kind = ModelKind::logistic_regression;
  std::string_view name;          // canonical benchmark name
  bool needs_standardization = false;
  bool supports_importance = false;

  bool operator==(const ModelSpec&) const = default;
};

// The benchmark zoo in its fixed reporting order.
const std::vector<ModelSpec>& model_zoo();
ModelSpec model_spec(ModelKind kind);
ModelSpec parse_model_name(std::string_view name);  // throws ConfigError

// Prediction interface over inputs in the same space the model was trained on
// (already standardized when the spec requires it).
class Model {
 public:
  virtual ~Model() = default;
  virtual std::vector<double> predict_proba(const Matrix& x) const = 0;
};

// A trained cutoff-specific predictor plus everything needed to apply it:
// the optional scaler fitted on the training split and training metadata.
struct FittedModel {
  ModelSpec spec;
  std::uint64_t seed = 0;
  std::size_t n_train = 0;
  std::size_t n_features = 0;
  double base_rate = 0.0;
  std::optional<Scaler> scaler;
  std::unique_ptr<Model> model;

  // Applies the scaler when present, then the model.  Probabilities of the
  // positive class, all within [0,1].
  std::vector<double> predict_proba(const Matrix& x) const;
};

// Fits one model with its fixed benchmark configuration.  Deterministic for
// a given (spec, x, y, seed).  Refuses single-class targets and non-finite
// inputs.
FittedModel train_model(const ModelSpec& spec, const Matrix& x,
                        const std::vector<std::uint8_t>& y, std::uint64_t seed);

struct ImportanceEntry {
  std::string feature;
  double weight = 0.0;
};

struct ImportanceReport {
  std::string model;
  std::int32_t cutoff = 0;  // filled by the caller running the profile
  std::vector<ImportanceEntry> ranked;  // descending weight, ties by feature order
};

// Tree ensembles: normalized total impurity decrease.  Logistic regression:
// absolute standardized coefficients.  Other models are refused.
ImportanceReport feature_importance(const FittedModel& fitted,
                                    const std::vector<std::string>& feature_names);

// Versioned JSON blob with spec, seed, scaler, and parameters; reload gives
// bit-identical predictions.
void save_model(const FittedModel& fitted, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace leap
