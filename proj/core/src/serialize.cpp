#include <fstream>

#include <nlohmann/json.hpp>

#include "leap/boosting.hpp"
#include "leap/error.hpp"
#include "leap/forest.hpp"
#include "leap/knn.hpp"
#include "leap/linear.hpp"
#include "leap/mlp.hpp"
#include "leap/model.hpp"
#include "leap/naive_bayes.hpp"

// Versioned JSON blob for fitted models.  JSON keeps the format readable and
// the library prints doubles with round-trip precision, so reloads reproduce
// predictions bit for bit.

namespace leap {
namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json tree_to_json(const DecisionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.value});
  }
  return json{{"nodes", std::move(nodes)}, {"importance", tree.importance()}};
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree tree;
  for (const auto& n : j.at("nodes")) {
    tree.nodes.push_back(TreeNode{n.at(0).get<std::int32_t>(), n.at(1).get<double>(),
                                  n.at(2).get<std::int32_t>(), n.at(3).get<std::int32_t>(),
                                  n.at(4).get<double>()});
  }
  tree.mutable_importance() = j.at("importance").get<std::vector<double>>();
  return tree;
}

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
  Matrix m;
  m.rows = j.at("rows").get<std::size_t>();
  m.cols = j.at("cols").get<std::size_t>();
  m.data = j.at("data").get<std::vector<double>>();
  if (m.data.size() != m.rows * m.cols) throw DataError("corrupt matrix in model file");
  return m;
}

json params_to_json(const FittedModel& fitted) {
  if (const auto* lr = dynamic_cast<const LogisticModel*>(fitted.model.get())) {
    return json{{"weights", lr->weights},
                {"intercept", lr->intercept},
                {"iterations_used", lr->iterations_used},
                {"converged", lr->converged}};
  }
  if (const auto* forest = dynamic_cast<const ForestModel*>(fitted.model.get())) {
    json trees = json::array();
    for (const auto& t : forest->trees) trees.push_back(tree_to_json(t));
    return json{{"n_trees", forest->params.n_trees},
                {"max_depth", forest->params.max_depth},
                {"min_leaf", forest->params.min_leaf},
                {"bootstrap", forest->params.bootstrap},
                {"random_thresholds", forest->params.thresholds == ThresholdRule::random},
                {"n_features", forest->n_features},
                {"trees", std::move(trees)}};
  }
  if (const auto* gbdt = dynamic_cast<const GbdtModel*>(fitted.model.get())) {
    json stages = json::array();
    for (const auto& t : gbdt->stages) stages.push_back(tree_to_json(t));
    return json{{"n_stages", gbdt->params.n_stages},
                {"learning_rate", gbdt->params.learning_rate},
                {"max_depth", gbdt->params.max_depth},
                {"min_leaf", gbdt->params.min_leaf},
                {"init_log_odds", gbdt->init_log_odds},
                {"n_features", gbdt->n_features},
                {"stages", std::move(stages)}};
  }
  if (const auto* ada = dynamic_cast<const AdaBoostModel*>(fitted.model.get())) {
    json stages = json::array();
    for (const auto& s : ada->stages) {
      stages.push_back(json{{"alpha", s.alpha}, {"stump", tree_to_json(s.stump)}});
    }
    return json{{"n_stages", ada->params.n_stages},
                {"learning_rate", ada->params.learning_rate},
                {"n_features", ada->n_features},
                {"stages", std::move(stages)}};
  }
  if (const auto* knn = dynamic_cast<const KnnModel*>(fitted.model.get())) {
    return json{{"k", knn->params.k},
                {"train", matrix_to_json(knn->train)},
                {"labels", knn->labels}};
  }
  if (const auto* nb = dynamic_cast<const GaussianNbModel*>(fitted.model.get())) {
    return json{{"log_prior", {nb->log_prior[0], nb->log_prior[1]}},
                {"mean0", nb->mean[0]},
                {"mean1", nb->mean[1]},
                {"var0", nb->var[0]},
                {"var1", nb->var[1]}};
  }
  if (const auto* mlp = dynamic_cast<const MlpModel*>(fitted.model.get())) {
    return json{{"input_dim", mlp->network.input_dim()}, {"params", mlp->network.params}};
  }
  throw ConfigError("cannot serialize unknown model type");
}

std::unique_ptr<Model> params_from_json(const ModelSpec& spec, const json& p) {
  switch (spec.kind) {
    case ModelKind::logistic_regression: {
      auto m = std::make_unique<LogisticModel>();
      m->weights = p.at("weights").get<std::vector<double>>();
      m->intercept = p.at("intercept").get<double>();
      m->iterations_used = p.at("iterations_used").get<int>();
      m->converged = p.at("converged").get<bool>();
      return m;
    }
    case ModelKind::random_forest:
    case ModelKind::extra_trees: {
      auto m = std::make_unique<ForestModel>();
      m->params.n_trees = p.at("n_trees").get<int>();
      m->params.max_depth = p.at("max_depth").get<int>();
      m->params.min_leaf = p.at("min_leaf").get<int>();
      m->params.bootstrap = p.at("bootstrap").get<bool>();
      m->params.thresholds =
          p.at("random_thresholds").get<bool>() ? ThresholdRule::random : ThresholdRule::best;
      m->n_features = p.at("n_features").get<std::size_t>();
      for (const auto& t : p.at("trees")) m->trees.push_back(tree_from_json(t));
      return m;
    }
    case ModelKind::gbdt: {
      auto m = std::make_unique<GbdtModel>();
      m->params.n_stages = p.at("n_stages").get<int>();
      m->params.learning_rate = p.at("learning_rate").get<double>();
      m->params.max_depth = p.at("max_depth").get<int>();
      m->params.min_leaf = p.at("min_leaf").get<int>();
      m->init_log_odds = p.at("init_log_odds").get<double>();
      m->n_features = p.at("n_features").get<std::size_t>();
      for (const auto& t : p.at("stages")) m->stages.push_back(tree_from_json(t));
      return m;
    }
    case ModelKind::adaboost: {
      auto m = std::make_unique<AdaBoostModel>();
      m->params.n_stages = p.at("n_stages").get<int>();
      m->params.learning_rate = p.at("learning_rate").get<double>();
      m->n_features = p.at("n_features").get<std::size_t>();
      for (const auto& s : p.at("stages")) {
        m->stages.push_back(
            AdaBoostStage{tree_from_json(s.at("stump")), s.at("alpha").get<double>()});
      }
      return m;
    }
    case ModelKind::knn: {
      auto m = std::make_unique<KnnModel>();
      m->params.k = p.at("k").get<int>();
      m->train = matrix_from_json(p.at("train"));
      m->labels = p.at("labels").get<std::vector<std::uint8_t>>();
      return m;
    }
    case ModelKind::naive_bayes: {
      auto m = std::make_unique<GaussianNbModel>();
      m->log_prior[0] = p.at("log_prior").at(0).get<double>();
      m->log_prior[1] = p.at("log_prior").at(1).get<double>();
      m->mean[0] = p.at("mean0").get<std::vector<double>>();
      m->mean[1] = p.at("mean1").get<std::vector<double>>();
      m->var[0] = p.at("var0").get<std::vector<double>>();
      m->var[1] = p.at("var1").get<std::vector<double>>();
      return m;
    }
    case ModelKind::mlp: {
      auto m = std::make_unique<MlpModel>();
      m->network = MlpNetwork(p.at("input_dim").get<std::size_t>());
      m->network.params = p.at("params").get<std::vector<double>>();
      return m;
    }
  }
  throw ConfigError("cannot deserialize unknown model kind");
}

}  // namespace

void save_model(const FittedModel& fitted, const std::filesystem::path& path) {
  json doc{{"format", "leap-model"},
           {"version", kFormatVersion},
           {"model", std::string(fitted.spec.name)},
           {"seed", fitted.seed},
           {"n_train", fitted.n_train},
           {"n_features", fitted.n_features},
           {"base_rate", fitted.base_rate},
           {"params", params_to_json(fitted)}};
  if (fitted.scaler) {
    doc["scaler"] = json{{"mean", fitted.scaler->mean}, {"std", fitted.scaler->std}};
  } else {
    doc["scaler"] = nullptr;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open model file for writing: " + path.string());
  out << doc.dump() << '\n';
  if (!out) throw DataError("failed writing model file: " + path.string());
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "leap-model" ||
        doc.at("version").get<int>() != kFormatVersion) {
      throw DataError("unsupported model file format: " + path.string());
    }
    FittedModel fitted;
    fitted.spec = parse_model_name(doc.at("model").get<std::string>());
    fitted.seed = doc.at("seed").get<std::uint64_t>();
    fitted.n_train = doc.at("n_train").get<std::size_t>();
    fitted.n_features = doc.at("n_features").get<std::size_t>();
    fitted.base_rate = doc.at("base_rate").get<double>();
    if (!doc.at("scaler").is_null()) {
      Scaler scaler;
      scaler.mean = doc.at("scaler").at("mean").get<std::vector<double>>();
      scaler.std = doc.at("scaler").at("std").get<std::vector<double>>();
      fitted.scaler = std::move(scaler);
    }
    fitted.model = params_from_json(fitted.spec, doc.at("params"));
    return fitted;
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
}

}  // namespace leap
