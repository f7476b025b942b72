#include "sentiscope/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "json.hpp"

namespace sentiscope {

namespace {

constexpr std::string_view kGbdtFormatVersion = "gbdt-1";
constexpr double kHessFloor = 1e-16;

double clamped_log(double p) { return std::log(std::max(p, 1e-15)); }

const TreeNode& descend(const TreeNode& node, const SparseVector& v) {
  const TreeNode* cur = &node;
  while (!cur->is_leaf()) {
    auto value = v.find(cur->feature);
    bool go_left = value ? (*value < cur->threshold) : cur->default_left;
    cur = go_left ? cur->left.get() : cur->right.get();
  }
  return *cur;
}

}  // namespace

void TrainConfig::validate() const {
  if (n_rounds < 1) throw ConfigError("n_rounds must be >= 1");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw ConfigError("learning_rate must lie in (0, 1]");
  }
  if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  if (!(min_child_weight >= 0.0)) throw ConfigError("min_child_weight must be >= 0");
}

std::vector<double> softmax(std::span<const double> margins) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double m : margins) peak = std::max(peak, m);
  std::vector<double> probs(margins.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < margins.size(); ++k) {
    probs[k] = std::exp(margins[k] - peak);
    sum += probs[k];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<GradHess> grad_hess_softmax(std::span<const double> probs, int true_class,
                                        double weight) {
  std::vector<GradHess> out(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    double target = (static_cast<int>(k) == true_class) ? 1.0 : 0.0;
    out[k].grad = weight * (probs[k] - target);
    out[k].hess = std::max(weight * probs[k] * (1.0 - probs[k]), kHessFloor);
  }
  return out;
}

double leaf_weight(double grad_sum, double hess_sum, double lambda) {
  double denom = hess_sum + lambda;
  if (denom == 0.0) throw DegenerateLeaf("leaf with zero hessian sum and zero lambda");
  return -grad_sum / denom;
}

double split_gain(double gl, double hl, double gr, double hr, double lambda,
                  double gamma) {
  return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) -
                (gl + gr) * (gl + gr) / (hl + hr + lambda)) -
         gamma;
}

ColumnStore::ColumnStore(std::span<const SparseVector> rows, int feature_dim)
    : n_rows_(static_cast<int>(rows.size())), rows_(rows) {
  if (feature_dim < 0) throw DimensionMismatch("feature_dim must be >= 0");
  columns_.resize(static_cast<std::size_t>(feature_dim));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [feature, value] : rows[r].entries) {
      if (feature < 0 || feature >= feature_dim) {
        throw DimensionMismatch("feature index " + std::to_string(feature) +
                                " outside dimension " + std::to_string(feature_dim));
      }
      columns_[static_cast<std::size_t>(feature)].push_back(
          {static_cast<std::int32_t>(r), value});
    }
  }
  for (auto& column : columns_) {
    std::sort(column.begin(), column.end(), [](const Entry& a, const Entry& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.row < b.row;
    });
  }
}

std::optional<double> ColumnStore::value_at(std::int32_t row, std::int32_t feature) const {
  return rows_[static_cast<std::size_t>(row)].find(feature);
}

std::optional<SplitInfo> find_best_split(const std::vector<std::int32_t>& node_instances,
                                         const ColumnStore& features,
                                         std::span<const double> grad,
                                         std::span<const double> hess,
                                         const TrainConfig& config) {
  std::vector<char> in_node(static_cast<std::size_t>(features.n_rows()), 0);
  double g_total = 0.0, h_total = 0.0;
  for (std::int32_t i : node_instances) {
    in_node[static_cast<std::size_t>(i)] = 1;
    g_total += grad[static_cast<std::size_t>(i)];
    h_total += hess[static_cast<std::size_t>(i)];
  }

  std::optional<SplitInfo> best;
  auto consider = [&](std::int32_t feature, double threshold, bool default_left,
                      double gl, double hl) {
    double gr = g_total - gl;
    double hr = h_total - hl;
    if (hl < config.min_child_weight || hr < config.min_child_weight) return;
    double gain = split_gain(gl, hl, gr, hr, config.lambda, config.gamma);
    if (!(gain > 0.0)) return;  // also rejects NaN from 0/0 corner cases
    // Strict improvement only: earlier candidates (lower feature, lower
    // threshold, default_left first) win ties.
    if (!best || gain > best->gain) best = SplitInfo{feature, threshold, default_left, gain};
  };

  for (std::int32_t feature = 0; feature < features.feature_dim(); ++feature) {
    const auto& column = features.column(feature);

    // Present = instances of this node carrying the feature, in value order.
    double g_present = 0.0, h_present = 0.0;
    std::vector<ColumnStore::Entry> present;
    for (const auto& entry : column) {
      if (!in_node[static_cast<std::size_t>(entry.row)]) continue;
      present.push_back(entry);
      g_present += grad[static_cast<std::size_t>(entry.row)];
      h_present += hess[static_cast<std::size_t>(entry.row)];
    }
    if (present.size() < 2) continue;

    double g_absent = g_total - g_present;
    double h_absent = h_total - h_present;

    double g_below = 0.0, h_below = 0.0;  // strictly below the candidate threshold
    for (std::size_t k = 0; k + 1 < present.size(); ++k) {
      g_below += grad[static_cast<std::size_t>(present[k].row)];
      h_below += hess[static_cast<std::size_t>(present[k].row)];
      if (present[k].value == present[k + 1].value) continue;
      double threshold = 0.5 * (present[k].value + present[k + 1].value);
      // Missing values routed left, then routed right.
      consider(feature, threshold, true, g_below + g_absent, h_below + h_absent);
      consider(feature, threshold, false, g_below, h_below);
    }
  }
  return best;
}

namespace {

TreePtr grow(const std::vector<std::int32_t>& instances, int depth,
             const ColumnStore& features, std::span<const double> grad,
             std::span<const double> hess, const TrainConfig& config) {
  double g = 0.0, h = 0.0;
  for (std::int32_t i : instances) {
    g += grad[static_cast<std::size_t>(i)];
    h += hess[static_cast<std::size_t>(i)];
  }

  std::optional<SplitInfo> split;
  if (depth < config.max_depth) {
    split = find_best_split(instances, features, grad, hess, config);
  }
  if (!split) {
    auto leaf = std::make_unique<TreeNode>();
    leaf->weight = config.learning_rate * leaf_weight(g, h, config.lambda);
    return leaf;
  }

  std::vector<std::int32_t> left, right;
  for (std::int32_t i : instances) {
    auto value = features.value_at(i, split->feature);
    bool go_left = value ? (*value < split->threshold) : split->default_left;
    (go_left ? left : right).push_back(i);
  }

  auto node = std::make_unique<TreeNode>();
  node->feature = split->feature;
  node->threshold = split->threshold;
  node->default_left = split->default_left;
  node->left = grow(left, depth + 1, features, grad, hess, config);
  node->right = grow(right, depth + 1, features, grad, hess, config);
  return node;
}

double tree_value(const TreeNode& root, const SparseVector& v) {
  return descend(root, v).weight;
}

}  // namespace

TreePtr build_tree(const std::vector<std::int32_t>& instances,
                   const ColumnStore& features, std::span<const double> grad,
                   std::span<const double> hess, const TrainConfig& config) {
  return grow(instances, 0, features, grad, hess, config);
}

GbdtTrainResult train_gbdt(std::span<const SparseVector> vectors,
                           std::span<const int> labels, int n_classes,
                           int feature_dim, const TrainConfig& config) {
  config.validate();
  if (vectors.empty()) throw EmptyTrainingSet("no training vectors");
  if (vectors.size() != labels.size()) {
    throw DimensionMismatch("got " + std::to_string(vectors.size()) + " vectors but " +
                            std::to_string(labels.size()) + " labels");
  }
  if (n_classes < 2) throw ConfigError("n_classes must be >= 2");

  const std::size_t n = vectors.size();
  std::vector<std::int64_t> class_counts(static_cast<std::size_t>(n_classes), 0);
  for (int label : labels) {
    if (label < 0 || label >= n_classes) {
      throw DimensionMismatch("label " + std::to_string(label) + " outside 0.." +
                              std::to_string(n_classes - 1));
    }
    class_counts[static_cast<std::size_t>(label)] += 1;
  }
  int distinct = 0;
  for (auto count : class_counts) distinct += count > 0 ? 1 : 0;
  if (distinct < 2) {
    throw SingleClassTraining("training labels cover fewer than 2 classes");
  }

  std::vector<double> class_weight(static_cast<std::size_t>(n_classes), 1.0);
  if (config.class_weighting == TrainConfig::ClassWeighting::balanced) {
    for (int c = 0; c < n_classes; ++c) {
      auto count = class_counts[static_cast<std::size_t>(c)];
      if (count > 0) {
        class_weight[static_cast<std::size_t>(c)] =
            static_cast<double>(n) / (static_cast<double>(n_classes) * static_cast<double>(count));
      }
    }
  }

  ColumnStore store(vectors, feature_dim);
  std::vector<std::int32_t> all(n);
  std::iota(all.begin(), all.end(), 0);

  GbdtModel model;
  model.n_classes = n_classes;
  model.feature_dim = feature_dim;
  model.base_score.assign(static_cast<std::size_t>(n_classes), 0.0);
  model.config = config;

  std::vector<double> margins(n * static_cast<std::size_t>(n_classes), 0.0);
  auto margin_row = [&](std::size_t i) {
    return std::span<double>(margins).subspan(i * static_cast<std::size_t>(n_classes),
                                              static_cast<std::size_t>(n_classes));
  };

  GbdtTrainResult result;
  std::vector<double> grad(n), hess(n);
  for (int round = 0; round < config.n_rounds; ++round) {
    std::vector<std::vector<GradHess>> gh(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto probs = softmax(margin_row(i));
      gh[i] = grad_hess_softmax(probs, labels[i],
                                class_weight[static_cast<std::size_t>(labels[i])]);
    }

    std::vector<TreePtr> trees;
    trees.reserve(static_cast<std::size_t>(n_classes));
    for (int k = 0; k < n_classes; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        grad[i] = gh[i][static_cast<std::size_t>(k)].grad;
        hess[i] = gh[i][static_cast<std::size_t>(k)].hess;
      }
      TreePtr tree = build_tree(all, store, grad, hess, config);
      for (std::size_t i = 0; i < n; ++i) {
        margin_row(i)[static_cast<std::size_t>(k)] += tree_value(*tree, vectors[i]);
      }
      trees.push_back(std::move(tree));
    }
    model.rounds.push_back(std::move(trees));

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto probs = softmax(margin_row(i));
      loss -= clamped_log(probs[static_cast<std::size_t>(labels[i])]);
    }
    result.round_logloss.push_back(loss / static_cast<double>(n));
  }

  result.model = std::move(model);
  return result;
}

std::vector<double> predict_margin(const GbdtModel& model, const SparseVector& v) {
  for (const auto& [feature, value] : v.entries) {
    if (feature < 0 || feature >= model.feature_dim) {
      throw DimensionMismatch("feature index " + std::to_string(feature) +
                              " outside dimension " + std::to_string(model.feature_dim));
    }
  }
  std::vector<double> margins = model.base_score;
  for (const auto& round : model.rounds) {
    for (std::size_t k = 0; k < round.size(); ++k) {
      margins[k] += descend(*round[k], v).weight;
    }
  }
  return margins;
}

std::vector<double> predict_proba(const GbdtModel& model, const SparseVector& v) {
  return softmax(predict_margin(model, v));
}

int predict_label(const GbdtModel& model, const SparseVector& v) {
  auto margins = predict_margin(model, v);
  std::size_t best = 0;
  for (std::size_t k = 1; k < margins.size(); ++k) {
    if (margins[k] > margins[best]) best = k;
  }
  return static_cast<int>(best);
}

namespace {

nlohmann::json config_to_json(const TrainConfig& config) {
  return {
      {"n_rounds", config.n_rounds},
      {"learning_rate", config.learning_rate},
      {"max_depth", config.max_depth},
      {"lambda", config.lambda},
      {"gamma", config.gamma},
      {"min_child_weight", config.min_child_weight},
      {"class_weighting",
       config.class_weighting == TrainConfig::ClassWeighting::balanced ? "balanced" : "none"},
      {"seed", config.seed},
  };
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig config;
  config.n_rounds = j.at("n_rounds").get<int>();
  config.learning_rate = j.at("learning_rate").get<double>();
  config.max_depth = j.at("max_depth").get<int>();
  config.lambda = j.at("lambda").get<double>();
  config.gamma = j.at("gamma").get<double>();
  config.min_child_weight = j.at("min_child_weight").get<double>();
  std::string weighting = j.at("class_weighting").get<std::string>();
  if (weighting == "balanced") {
    config.class_weighting = TrainConfig::ClassWeighting::balanced;
  } else if (weighting == "none") {
    config.class_weighting = TrainConfig::ClassWeighting::none;
  } else {
    throw CorruptPayload("unknown class_weighting \"" + weighting + "\"");
  }
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

nlohmann::json tree_to_json(const TreeNode& node) {
  if (node.is_leaf()) return node.weight;
  return nlohmann::json::array({node.feature, node.threshold, node.default_left ? 1 : 0,
                                tree_to_json(*node.left), tree_to_json(*node.right)});
}

TreePtr tree_from_json(const nlohmann::json& j, int feature_dim, int depth, int max_depth) {
  auto node = std::make_unique<TreeNode>();
  if (j.is_number()) {
    node->weight = j.get<double>();
    return node;
  }
  if (!j.is_array() || j.size() != 5) {
    throw CorruptPayload("tree node must be a number or a 5-element array");
  }
  if (depth >= max_depth) throw CorruptPayload("tree deeper than max_depth");
  node->feature = j[0].get<std::int32_t>();
  if (node->feature < 0 || node->feature >= feature_dim) {
    throw CorruptPayload("tree references feature " + std::to_string(node->feature));
  }
  node->threshold = j[1].get<double>();
  node->default_left = j[2].get<int>() != 0;
  node->left = tree_from_json(j[3], feature_dim, depth + 1, max_depth);
  node->right = tree_from_json(j[4], feature_dim, depth + 1, max_depth);
  return node;
}

GbdtModel model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw CorruptPayload("gbdt payload must be an object");
    if (!j.contains("format_version") || !j["format_version"].is_string()) {
      throw CorruptPayload("gbdt payload lacks format_version");
    }
    std::string version = j["format_version"].get<std::string>();
    if (version != kGbdtFormatVersion) {
      throw VersionMismatch("unsupported gbdt format \"" + version + "\", expected \"" +
                            std::string(kGbdtFormatVersion) + "\"");
    }

    GbdtModel model;
    model.config = config_from_json(j.at("config"));
    model.n_classes = j.at("n_classes").get<int>();
    model.feature_dim = j.at("feature_dim").get<int>();
    if (model.n_classes < 2 || model.feature_dim < 0) {
      throw CorruptPayload("gbdt payload has invalid dimensions");
    }
    model.base_score = j.at("base_score").get<std::vector<double>>();
    if (model.base_score.size() != static_cast<std::size_t>(model.n_classes)) {
      throw CorruptPayload("base_score length differs from n_classes");
    }
    for (const auto& round : j.at("rounds")) {
      if (!round.is_array() || round.size() != static_cast<std::size_t>(model.n_classes)) {
        throw CorruptPayload("each round must hold one tree per class");
      }
      std::vector<TreePtr> trees;
      for (const auto& tree : round) {
        trees.push_back(tree_from_json(tree, model.feature_dim, 0, model.config.max_depth));
      }
      model.rounds.push_back(std::move(trees));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptPayload(std::string("malformed gbdt payload: ") + e.what());
  }
}

}  // namespace

std::string serialize_model(const GbdtModel& model) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& round : model.rounds) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : round) trees.push_back(tree_to_json(*tree));
    rounds.push_back(std::move(trees));
  }
  nlohmann::json j{
      {"format_version", std::string(kGbdtFormatVersion)},
      {"config", config_to_json(model.config)},
      {"n_classes", model.n_classes},
      {"feature_dim", model.feature_dim},
      {"base_score", model.base_score},
      {"rounds", std::move(rounds)},
  };
  return j.dump();
}

GbdtModel deserialize_model(std::string_view bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorruptPayload(std::string("gbdt payload is not valid json: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace sentiscope
