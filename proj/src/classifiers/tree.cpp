// Apache License, Version 2.0, refer to LICENSE.txt
#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "internal.hpp"

namespace textbench {

namespace detail {

namespace {

constexpr std::size_t kMaxThresholdCandidates = 128;

double gini(const std::vector<std::size_t>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double impurity = 1.0;
  for (std::size_t count : counts) {
    double p = static_cast<double>(count) / total;
    impurity -= p * p;
  }
  return impurity;
}

struct SplitChoice {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double weighted_gini = 0.0;
};

/// A run of equal (or, after subsampling, adjacent) feature values with
/// the class histogram of the rows carrying them.
struct ValueGroup {
  double min_value = 0.0;
  double max_value = 0.0;
  std::vector<std::size_t> hist;
};

class TreeBuilder {
 public:
  TreeBuilder(const SparseMatrix& matrix, const std::vector<int>& labels,
              std::size_t num_classes, std::size_t max_depth,
              std::size_t min_leaf, double feature_fraction, Rng& rng)
      : matrix_(matrix),
        labels_(labels),
        num_classes_(num_classes),
        max_depth_(max_depth),
        min_leaf_(std::max<std::size_t>(min_leaf, 1)),
        feature_fraction_(feature_fraction),
        rng_(rng) {}

  TreeModel build(const std::vector<std::size_t>& rows) {
    nodes_.clear();
    build_node(rows, 0);
    TreeModel model;
    model.nodes = std::move(nodes_);
    return model;
  }

 private:
  std::int32_t build_node(const std::vector<std::size_t>& rows,
                          std::size_t depth) {
    auto node_id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();

    std::vector<std::size_t> counts(num_classes_, 0);
    for (std::size_t row : rows) {
      ++counts[static_cast<std::size_t>(labels_[row])];
    }
    std::size_t majority = 0;
    for (std::size_t c = 1; c < num_classes_; ++c) {
      if (counts[c] > counts[majority]) majority = c;
    }
    bool pure =
        counts[majority] == rows.size();  // single class, zero impurity

    if (pure || rows.size() < 2 * min_leaf_ ||
        (max_depth_ > 0 && depth >= max_depth_)) {
      make_leaf(node_id, majority);
      return node_id;
    }

    SplitChoice best = choose_split(rows, counts);
    if (!best.found) {
      make_leaf(node_id, majority);
      return node_id;
    }

    std::vector<std::size_t> left_rows, right_rows;
    left_rows.reserve(rows.size());
    right_rows.reserve(rows.size());
    for (std::size_t row : rows) {
      double value = feature_value(row, best.feature);
      (value <= best.threshold ? left_rows : right_rows).push_back(row);
    }

    nodes_[static_cast<std::size_t>(node_id)].feature =
        static_cast<std::int32_t>(best.feature);
    nodes_[static_cast<std::size_t>(node_id)].threshold = best.threshold;
    std::int32_t left = build_node(left_rows, depth + 1);
    std::int32_t right = build_node(right_rows, depth + 1);
    nodes_[static_cast<std::size_t>(node_id)].left = left;
    nodes_[static_cast<std::size_t>(node_id)].right = right;
    return node_id;
  }

  void make_leaf(std::int32_t node_id, std::size_t majority) {
    TreeNode& node = nodes_[static_cast<std::size_t>(node_id)];
    node.feature = -1;
    node.leaf_class = static_cast<std::int32_t>(majority);
  }

  double feature_value(std::size_t row, std::uint32_t feature) const {
    const auto& entries = matrix_.rows[row].entries;
    auto it = std::lower_bound(
        entries.begin(), entries.end(), feature,
        [](const auto& entry, std::uint32_t c) { return entry.first < c; });
    if (it != entries.end() && it->first == feature) return it->second;
    return 0.0;
  }

  /// Exhaustive search over candidate (feature, threshold) pairs for the
  /// minimum weighted Gini. Candidate thresholds are midpoints between
  /// consecutive distinct observed values (absent entries count as 0).
  SplitChoice choose_split(const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& counts) {
    std::unordered_map<std::uint32_t,
                       std::vector<std::pair<double, std::size_t>>>
        by_feature;
    for (std::size_t row : rows) {
      for (const auto& [column, weight] : matrix_.rows[row].entries) {
        by_feature[column].emplace_back(
            weight, static_cast<std::size_t>(labels_[row]));
      }
    }

    std::vector<std::uint32_t> features;
    features.reserve(by_feature.size());
    for (const auto& [column, values] : by_feature) {
      features.push_back(column);
    }
    std::sort(features.begin(), features.end());
    subsample_features(features);

    double total = static_cast<double>(rows.size());
    double parent = gini(counts, total);
    SplitChoice best;
    best.weighted_gini = parent;

    std::vector<std::size_t> left_counts(num_classes_);
    for (std::uint32_t feature : features) {
      auto& observed = by_feature[feature];
      // merge the implicit zero-valued rows so thresholds cover them
      std::size_t zero_rows = rows.size() - observed.size();
      std::vector<ValueGroup> groups =
          group_by_value(observed, counts, zero_rows);
      if (groups.size() < 2) continue;
      subsample_groups(groups);

      std::fill(left_counts.begin(), left_counts.end(), 0);
      std::size_t left_total = 0;
      for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        for (std::size_t c = 0; c < num_classes_; ++c) {
          left_counts[c] += groups[g].hist[c];
        }
        left_total += std::accumulate(groups[g].hist.begin(),
                                      groups[g].hist.end(), std::size_t{0});
        std::size_t right_total = rows.size() - left_total;
        if (left_total < min_leaf_ || right_total < min_leaf_) continue;

        double lt = static_cast<double>(left_total);
        double rt = static_cast<double>(right_total);
        double left_impurity = 1.0;
        double right_impurity = 1.0;
        for (std::size_t c = 0; c < num_classes_; ++c) {
          double lp = static_cast<double>(left_counts[c]) / lt;
          left_impurity -= lp * lp;
          double rp = static_cast<double>(counts[c] - left_counts[c]) / rt;
          right_impurity -= rp * rp;
        }
        double weighted = (left_impurity * lt + right_impurity * rt) / total;
        if (weighted + 1e-12 < best.weighted_gini) {
          best.found = true;
          best.feature = feature;
          best.threshold =
              0.5 * (groups[g].max_value + groups[g + 1].min_value);
          best.weighted_gini = weighted;
        }
      }
    }
    return best;
  }

  /// Distinct values ascending, each with its class histogram; zero-valued
  /// rows are inserted at value 0.
  std::vector<ValueGroup> group_by_value(
      std::vector<std::pair<double, std::size_t>>& observed,
      const std::vector<std::size_t>& node_counts, std::size_t zero_rows) {
    std::sort(observed.begin(), observed.end());
    std::vector<ValueGroup> groups;
    bool zero_inserted = false;
    const auto insert_zero_group = [&] {
      zero_inserted = true;
      if (zero_rows == 0) return;
      std::vector<std::size_t> hist(node_counts);
      for (const auto& [value, label] : observed) {
        --hist[label];
      }
      groups.push_back({0.0, 0.0, std::move(hist)});
    };
    for (const auto& [value, label] : observed) {
      if (!zero_inserted && value > 0.0) insert_zero_group();
      if (groups.empty() || groups.back().min_value != value ||
          groups.back().max_value != value) {
        groups.push_back(
            {value, value, std::vector<std::size_t>(num_classes_, 0)});
      }
      ++groups.back().hist[label];
    }
    if (!zero_inserted) insert_zero_group();
    return groups;
  }

  void subsample_features(std::vector<std::uint32_t>& features) {
    if (feature_fraction_ >= 1.0 || features.empty()) return;
    std::size_t target;
    if (feature_fraction_ <= 0.0) {  // sqrt mode
      target = static_cast<std::size_t>(
          std::lround(std::sqrt(static_cast<double>(matrix_.dim))));
    } else {
      target = static_cast<std::size_t>(std::lround(
          feature_fraction_ * static_cast<double>(matrix_.dim)));
    }
    target = std::max<std::size_t>(target, 1);
    if (features.size() <= target) return;
    // partial Fisher-Yates keeps exactly `target` features, order restored
    for (std::size_t i = 0; i < target; ++i) {
      std::size_t j = i + rng_.below(features.size() - i);
      std::swap(features[i], features[j]);
    }
    features.resize(target);
    std::sort(features.begin(), features.end());
  }

  void subsample_groups(std::vector<ValueGroup>& groups) {
    if (groups.size() <= kMaxThresholdCandidates) return;
    // merge adjacent groups into at most kMaxThresholdCandidates buckets;
    // the seed decides the bucket phase
    std::size_t stride = (groups.size() + kMaxThresholdCandidates - 1) /
                         kMaxThresholdCandidates;
    std::size_t phase = rng_.below(stride);
    std::vector<ValueGroup> merged;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      bool boundary = merged.empty() || ((g + phase) % stride == 0);
      if (boundary) {
        merged.push_back(std::move(groups[g]));
      } else {
        merged.back().max_value = groups[g].max_value;
        for (std::size_t c = 0; c < num_classes_; ++c) {
          merged.back().hist[c] += groups[g].hist[c];
        }
      }
    }
    groups = std::move(merged);
  }

  const SparseMatrix& matrix_;
  const std::vector<int>& labels_;
  std::size_t num_classes_;
  std::size_t max_depth_;
  std::size_t min_leaf_;
  double feature_fraction_;  // <= 0: sqrt mode, >= 1: all features
  Rng& rng_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

TreeModel build_cart_tree(const SparseMatrix& matrix,
                          const std::vector<int>& labels,
                          const std::vector<std::size_t>& rows,
                          std::size_t num_classes, std::size_t max_depth,
                          std::size_t min_leaf, double feature_fraction,
                          Rng& rng) {
  TreeBuilder builder(matrix, labels, num_classes, max_depth, min_leaf,
                      feature_fraction, rng);
  return builder.build(rows);
}

}  // namespace detail

Model train_decision_tree(const TrainSet& data, const TreeParams& params,
                          std::uint64_t seed) {
  detail::validate_train_set(data, "decision_tree");
  detail::Rng rng(seed);
  std::vector<std::size_t> rows(data.labels.size());
  std::iota(rows.begin(), rows.end(), 0);
  TreeModel tree = detail::build_cart_tree(
      data.matrix, data.labels, rows, data.num_classes(), params.max_depth,
      params.min_leaf, 1.0, rng);

  Model model;
  model.kind = ClassifierKind::decision_tree;
  model.dim = data.matrix.dim;
  model.num_classes = data.num_classes();
  model.class_names = data.class_names;
  model.hyperparameters = {{"max_depth", std::to_string(params.max_depth)},
                           {"min_leaf", std::to_string(params.min_leaf)},
                           {"seed", std::to_string(seed)}};
  model.train_fingerprint = detail::fingerprint(data, model.hyperparameters);
  model.params = std::move(tree);
  return model;
}

Model train_random_forest(const TrainSet& data, const ForestParams& params,
                          std::uint64_t seed) {
  detail::validate_train_set(data, "random_forest");
  if (params.n_trees < 1) {
    throw Error(ErrorCode::training, "random_forest: n_trees must be >= 1");
  }
  std::size_t n = data.labels.size();

  ForestModel forest;
  forest.trees.reserve(params.n_trees);
  for (std::size_t tree_index = 0; tree_index < params.n_trees;
       ++tree_index) {
    // per-tree generator so parallel and serial training agree
    detail::Rng rng(seed + tree_index);
    std::vector<std::size_t> rows;
    rows.reserve(n);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) rows.push_back(rng.below(n));
      std::sort(rows.begin(), rows.end());
    } else {
      rows.resize(n);
      std::iota(rows.begin(), rows.end(), 0);
    }
    double fraction =
        params.feature_subsample >= 1.0 ? 1.0 : params.feature_subsample;
    forest.trees.push_back(detail::build_cart_tree(
        data.matrix, data.labels, rows, data.num_classes(),
        params.max_depth, 1, fraction, rng));
  }

  Model model;
  model.kind = ClassifierKind::random_forest;
  model.dim = data.matrix.dim;
  model.num_classes = data.num_classes();
  model.class_names = data.class_names;
  model.hyperparameters = {
      {"n_trees", std::to_string(params.n_trees)},
      {"max_depth", std::to_string(params.max_depth)},
      {"feature_subsample", std::to_string(params.feature_subsample)},
      {"bootstrap", params.bootstrap ? "true" : "false"},
      {"seed", std::to_string(seed)}};
  model.train_fingerprint = detail::fingerprint(data, model.hyperparameters);
  model.params = std::move(forest);
  return model;
}

}  // namespace textbench
