#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentiscope/errors.hpp"
#include "sentiscope/features.hpp"

namespace sentiscope {

struct TrainConfig {
  int n_rounds = 200;
  double learning_rate = 0.1;
  int max_depth = 6;
  double lambda = 1.0;            // L2 penalty on leaf weights
  double gamma = 0.0;             // per-leaf complexity penalty
  double min_child_weight = 1.0;  // minimum hessian sum per child
  enum class ClassWeighting { none, balanced };
  ClassWeighting class_weighting = ClassWeighting::none;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

struct GradHess {
  double grad = 0.0;
  double hess = 0.0;
};

// Numerically stable softmax (max subtraction).
std::vector<double> softmax(std::span<const double> margins);

// Per-class gradient/hessian of weighted softmax cross-entropy at the given
// probabilities: g_k = w * (p_k - [k == true_class]),
// h_k = w * p_k * (1 - p_k), hessians clamped below at 1e-16.
std::vector<GradHess> grad_hess_softmax(std::span<const double> probs,
                                        int true_class, double weight);

// argmin_w of G w + 0.5 (H + lambda) w^2, i.e. -G / (H + lambda).
double leaf_weight(double grad_sum, double hess_sum, double lambda);

// 0.5 * [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)] - gamma.
double split_gain(double gl, double hl, double gr, double hr, double lambda,
                  double gamma);

// Internal node when left/right are set, leaf otherwise.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  bool default_left = true;  // side taken by instances without the feature
  std::unique_ptr<TreeNode> left;
  std::unique_ptr<TreeNode> right;
  double weight = 0.0;  // leaf value (learning rate already applied)

  bool is_leaf() const { return left == nullptr; }
};

using TreePtr = std::unique_ptr<TreeNode>;

struct SplitInfo {
  std::int32_t feature = -1;
  double threshold = 0.0;
  bool default_left = true;
  double gain = 0.0;
};

// Column-major view of the training matrix: per feature, the instances that
// carry the feature, sorted by value (ties by row). Zeros are never stored.
class ColumnStore {
 public:
  struct Entry {
    std::int32_t row;
    double value;
  };

  ColumnStore(std::span<const SparseVector> rows, int feature_dim);

  int n_rows() const { return n_rows_; }
  int feature_dim() const { return static_cast<int>(columns_.size()); }
  const std::vector<Entry>& column(int feature) const { return columns_[feature]; }
  std::optional<double> value_at(std::int32_t row, std::int32_t feature) const;

 private:
  int n_rows_;
  std::vector<std::vector<Entry>> columns_;
  std::span<const SparseVector> rows_;
};

// Exact greedy sparsity-aware search over every (feature, midpoint
// threshold, default direction) candidate. Requires positive gain and both
// children's hessian sums >= min_child_weight. Ties break toward the lower
// feature index, then the lower threshold, then default_left = true.
std::optional<SplitInfo> find_best_split(const std::vector<std::int32_t>& node_instances,
                                         const ColumnStore& features,
                                         std::span<const double> grad,
                                         std::span<const double> hess,
                                         const TrainConfig& config);

// Depth-wise growth; every leaf weight is learning_rate * leaf_weight(G, H, lambda).
TreePtr build_tree(const std::vector<std::int32_t>& instances,
                   const ColumnStore& features, std::span<const double> grad,
                   std::span<const double> hess, const TrainConfig& config);

struct GbdtModel {
  int n_classes = 0;
  int feature_dim = 0;
  std::vector<double> base_score;         // per class, zeros
  std::vector<std::vector<TreePtr>> rounds;  // rounds[r][k]
  TrainConfig config;
};

struct GbdtTrainResult {
  GbdtModel model;
  std::vector<double> round_logloss;  // mean training log-loss after each round
};

// One tree per class per round on softmax cross-entropy gradients. With
// class_weighting = balanced, instances of class c weigh n / (k * n_c).
GbdtTrainResult train_gbdt(std::span<const SparseVector> vectors,
                           std::span<const int> labels, int n_classes,
                           int feature_dim, const TrainConfig& config);

std::vector<double> predict_margin(const GbdtModel& model, const SparseVector& v);
std::vector<double> predict_proba(const GbdtModel& model, const SparseVector& v);
// Argmax of the margins; ties break toward the lowest class index.
int predict_label(const GbdtModel& model, const SparseVector& v);

// JSON payload (format "gbdt-1"): config echo, base scores, trees as nested
// arrays [feature, threshold, default_flag, left, right] with bare numbers
// as leaves. Serializing and re-reading preserves predictions bit for bit.
std::string serialize_model(const GbdtModel& model);
GbdtModel deserialize_model(std::string_view bytes);

}  // namespace sentiscope
