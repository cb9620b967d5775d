// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "textbench/features.hpp"

namespace textbench {

struct TrainSet {
  SparseMatrix matrix;
  std::vector<int> labels;  // class ids, same length as matrix rows
  std::vector<std::string> class_names;

  std::size_t num_classes() const { return class_names.size(); }
};

enum class ClassifierKind {
  multinomial_nb,
  linear_svm,
  logistic_regression,
  knn,
  decision_tree,
  random_forest,
};

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& name);

// ---- hyperparameters ------------------------------------------------------

struct NbParams {
  double alpha = 1.0;  // Laplace smoothing per term
};

struct SvmParams {
  double c = 1.0;  // inverse regularization strength
  std::size_t epochs = 20;
};

struct LrParams {
  double l2 = 1.0;  // penalty weight; objective adds l2/(2n) * ||w||^2
  std::size_t epochs = 100;
  double tol = 1e-6;  // stop when loss improvement falls below this
};

enum class KnnMetric { cosine, euclidean };

struct KnnParams {
  std::size_t k = 5;
  KnnMetric metric = KnnMetric::cosine;
};

struct TreeParams {
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_leaf = 1;
};

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;
  double feature_subsample = 0.0;  // fraction per split; 0 = sqrt(features)
  bool bootstrap = true;
};

// ---- learned parameters ---------------------------------------------------

struct NbModel {
  std::vector<double> log_prior;                    // per class
  std::vector<std::vector<double>> log_likelihood;  // [class][column]
};

/// One weight row per class for one-vs-rest; binary models keep a single
/// row whose sign separates class 1 (positive score) from class 0.
struct LinearModel {
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  double objective = 0.0;  // final value of the training objective
};

struct KnnModel {
  SparseMatrix train_matrix;
  std::vector<int> labels;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // x[feature] <= threshold goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::int32_t leaf_class = -1;
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct ForestModel {
  std::vector<TreeModel> trees;
};

struct Model {
  ClassifierKind kind = ClassifierKind::multinomial_nb;
  std::size_t dim = 0;          // training feature dimension
  std::size_t num_classes = 0;
  std::vector<std::string> class_names;
  std::map<std::string, std::string> hyperparameters;
  std::string train_fingerprint;  // hash of (matrix, labels, hyperparameters)
  std::variant<NbModel, LinearModel, KnnModel, TreeModel, ForestModel> params;
};

// ---- training -------------------------------------------------------------

Model train_multinomial_nb(const TrainSet& data, const NbParams& params = {});
Model train_linear_svm(const TrainSet& data, const SvmParams& params = {},
                       std::uint64_t seed = 0);
Model train_logistic_regression(const TrainSet& data,
                                const LrParams& params = {},
                                std::uint64_t seed = 0);
Model train_knn(const TrainSet& data, const KnnParams& params = {});
Model train_decision_tree(const TrainSet& data, const TreeParams& params = {},
                          std::uint64_t seed = 0);
Model train_random_forest(const TrainSet& data,
                          const ForestParams& params = {},
                          std::uint64_t seed = 0);

/// One class id per row. Ties break toward the lower class id everywhere.
/// Throws when matrix.dim differs from the model's training dimension.
std::vector<int> predict(const Model& model, const SparseMatrix& matrix);

// ---- objectives exposed for convergence checks ----------------------------

/// Mean binary cross-entropy plus l2/(2n)*||w||^2; gradient written to
/// grad_w/grad_b. Labels must be 0/1.
double lr_loss_gradient(const SparseMatrix& matrix,
                        const std::vector<int>& labels,
                        const std::vector<double>& weights, double bias,
                        double l2, std::vector<double>* grad_w,
                        double* grad_b);

/// lambda/2*||w||^2 + mean hinge loss with lambda = 1/(c*n). Labels 0/1.
double svm_objective(const SparseMatrix& matrix, const std::vector<int>& labels,
                     const std::vector<double>& weights, double bias, double c);

// ---- serialization --------------------------------------------------------

/// Versioned self-describing JSON dump; loading reproduces identical
/// predictions.
void save_model(const Model& model, std::ostream& out);
Model load_model(std::istream& in);
void save_model_file(const Model& model, const std::filesystem::path& path);
Model load_model_file(const std::filesystem::path& path);

}  // namespace textbench
