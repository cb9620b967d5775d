// Apache License, Version 2.0, refer to LICENSE.txt
#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "internal.hpp"
#include "util.hpp"

namespace textbench {

std::string to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::multinomial_nb: return "multinomial_nb";
    case ClassifierKind::linear_svm: return "linear_svm";
    case ClassifierKind::logistic_regression: return "logistic_regression";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::decision_tree: return "decision_tree";
    case ClassifierKind::random_forest: return "random_forest";
  }
  return "unknown";
}

ClassifierKind classifier_kind_from_string(const std::string& name) {
  for (ClassifierKind kind :
       {ClassifierKind::multinomial_nb, ClassifierKind::linear_svm,
        ClassifierKind::logistic_regression, ClassifierKind::knn,
        ClassifierKind::decision_tree, ClassifierKind::random_forest}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::config, "unknown classifier '" + name + "'");
}

namespace detail {

void validate_train_set(const TrainSet& data, const char* kind) {
  const std::string prefix = std::string(kind) + ": ";
  if (data.matrix.rows.size() != data.labels.size()) {
    throw Error(ErrorCode::contract,
                prefix + "labels/rows length mismatch");
  }
  if (data.labels.empty()) {
    throw Error(ErrorCode::contract, prefix + "empty training set");
  }
  std::size_t num_classes = data.num_classes();
  if (num_classes < 2) {
    throw Error(ErrorCode::contract, prefix + "need at least 2 classes");
  }
  std::vector<bool> present(num_classes, false);
  for (int label : data.labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes) {
      throw Error(ErrorCode::contract,
                  prefix + "label " + std::to_string(label) +
                      " out of range for " + std::to_string(num_classes) +
                      " classes");
    }
    present[static_cast<std::size_t>(label)] = true;
  }
  if (!std::all_of(present.begin(), present.end(),
                   [](bool b) { return b; })) {
    throw Error(ErrorCode::contract,
                prefix + "every class needs at least one training example");
  }
}

double sparse_dot(const SparseVector& row, const std::vector<double>& dense) {
  double total = 0.0;
  for (const auto& [column, weight] : row.entries) {
    total += weight * dense[column];
  }
  return total;
}

std::string fingerprint(const TrainSet& data,
                        const std::map<std::string, std::string>& hyper) {
  std::uint64_t h = util::kFnvOffset;
  h = util::fnv1a(std::uint64_t{data.matrix.dim}, h);
  h = util::fnv1a(std::uint64_t{data.matrix.rows.size()}, h);
  for (const SparseVector& row : data.matrix.rows) {
    for (const auto& [column, weight] : row.entries) {
      h = util::fnv1a(std::uint64_t{column}, h);
      h = util::fnv1a(std::bit_cast<std::uint64_t>(weight), h);
    }
    h = util::fnv1a(std::uint64_t{0xABCDULL}, h);
  }
  for (int label : data.labels) {
    h = util::fnv1a(static_cast<std::uint64_t>(label), h);
  }
  for (const auto& [key, value] : hyper) {
    h = util::fnv1a(key, h);
    h = util::fnv1a(value, h);
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(h));
  return buffer;
}

std::size_t argmax_lowest(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

int predict_tree_row(const TreeModel& tree, const SparseVector& row) {
  std::int32_t node_id = 0;
  while (true) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
    if (node.feature < 0) return node.leaf_class;
    auto column = static_cast<std::uint32_t>(node.feature);
    double value = 0.0;  // absent features read as zero
    auto it = std::lower_bound(
        row.entries.begin(), row.entries.end(), column,
        [](const auto& entry, std::uint32_t c) { return entry.first < c; });
    if (it != row.entries.end() && it->first == column) value = it->second;
    node_id = value <= node.threshold ? node.left : node.right;
  }
}

}  // namespace detail

namespace {

std::vector<int> predict_nb(const Model& model, const SparseMatrix& matrix) {
  const auto& nb = std::get<NbModel>(model.params);
  std::vector<int> out;
  out.reserve(matrix.rows.size());
  std::vector<double> scores(model.num_classes);
  for (const SparseVector& row : matrix.rows) {
    for (std::size_t c = 0; c < model.num_classes; ++c) {
      scores[c] = nb.log_prior[c] +
                  detail::sparse_dot(row, nb.log_likelihood[c]);
    }
    out.push_back(static_cast<int>(detail::argmax_lowest(scores)));
  }
  return out;
}

std::vector<int> predict_linear(const Model& model,
                                const SparseMatrix& matrix) {
  const auto& linear = std::get<LinearModel>(model.params);
  std::vector<int> out;
  out.reserve(matrix.rows.size());
  if (linear.weights.size() == 1) {
    // binary: positive score selects class 1, ties fall to class 0
    for (const SparseVector& row : matrix.rows) {
      double score = detail::sparse_dot(row, linear.weights[0]) +
                     linear.bias[0];
      out.push_back(score > 0.0 ? 1 : 0);
    }
    return out;
  }
  std::vector<double> scores(linear.weights.size());
  for (const SparseVector& row : matrix.rows) {
    for (std::size_t c = 0; c < linear.weights.size(); ++c) {
      scores[c] = detail::sparse_dot(row, linear.weights[c]) + linear.bias[c];
    }
    out.push_back(static_cast<int>(detail::argmax_lowest(scores)));
  }
  return out;
}

std::vector<int> predict_forest(const Model& model,
                                const SparseMatrix& matrix) {
  const auto& forest = std::get<ForestModel>(model.params);
  std::vector<int> out;
  out.reserve(matrix.rows.size());
  std::vector<double> votes(model.num_classes);
  for (const SparseVector& row : matrix.rows) {
    std::fill(votes.begin(), votes.end(), 0.0);
    for (const TreeModel& tree : forest.trees) {
      votes[static_cast<std::size_t>(detail::predict_tree_row(tree, row))] +=
          1.0;
    }
    out.push_back(static_cast<int>(detail::argmax_lowest(votes)));
  }
  return out;
}

}  // namespace

// defined in neighbors.cpp
std::vector<int> predict_knn(const Model& model, const SparseMatrix& matrix);

std::vector<int> predict(const Model& model, const SparseMatrix& matrix) {
  if (matrix.dim != model.dim) {
    throw Error(ErrorCode::contract,
                "predict: matrix dimension " + std::to_string(matrix.dim) +
                    " does not match model dimension " +
                    std::to_string(model.dim));
  }
  switch (model.kind) {
    case ClassifierKind::multinomial_nb:
      return predict_nb(model, matrix);
    case ClassifierKind::linear_svm:
    case ClassifierKind::logistic_regression:
      return predict_linear(model, matrix);
    case ClassifierKind::knn:
      return predict_knn(model, matrix);
    case ClassifierKind::decision_tree: {
      const auto& tree = std::get<TreeModel>(model.params);
      std::vector<int> out;
      out.reserve(matrix.rows.size());
      for (const SparseVector& row : matrix.rows) {
        out.push_back(detail::predict_tree_row(tree, row));
      }
      return out;
    }
    case ClassifierKind::random_forest:
      return predict_forest(model, matrix);
  }
  throw Error(ErrorCode::contract, "predict: unknown model kind");
}

// ---- serialization ---------------------------------------------------------

namespace {

using nlohmann::json;

json matrix_to_json(const SparseMatrix& matrix) {
  json rows = json::array();
  for (const SparseVector& row : matrix.rows) {
    json entries = json::array();
    for (const auto& [column, weight] : row.entries) {
      entries.push_back({column, weight});
    }
    rows.push_back(std::move(entries));
  }
  return {{"dim", matrix.dim}, {"rows", std::move(rows)}};
}

SparseMatrix matrix_from_json(const json& j) {
  SparseMatrix matrix;
  matrix.dim = j.at("dim").get<std::size_t>();
  for (const auto& row_json : j.at("rows")) {
    SparseVector row;
    row.dim = matrix.dim;
    for (const auto& entry : row_json) {
      row.entries.emplace_back(entry.at(0).get<std::uint32_t>(),
                               entry.at(1).get<double>());
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

json tree_to_json(const TreeModel& tree) {
  json nodes = json::array();
  for (const TreeNode& node : tree.nodes) {
    nodes.push_back({node.feature, node.threshold, node.left, node.right,
                     node.leaf_class});
  }
  return nodes;
}

TreeModel tree_from_json(const json& j) {
  TreeModel tree;
  for (const auto& entry : j) {
    TreeNode node;
    node.feature = entry.at(0).get<std::int32_t>();
    node.threshold = entry.at(1).get<double>();
    node.left = entry.at(2).get<std::int32_t>();
    node.right = entry.at(3).get<std::int32_t>();
    node.leaf_class = entry.at(4).get<std::int32_t>();
    tree.nodes.push_back(node);
  }
  return tree;
}

}  // namespace

void save_model(const Model& model, std::ostream& out) {
  json j;
  j["format"] = "textbench-model";
  j["version"] = 1;
  j["kind"] = to_string(model.kind);
  j["dim"] = model.dim;
  j["num_classes"] = model.num_classes;
  j["class_names"] = model.class_names;
  j["hyperparameters"] = model.hyperparameters;
  j["train_fingerprint"] = model.train_fingerprint;

  json params;
  if (const auto* nb = std::get_if<NbModel>(&model.params)) {
    params["log_prior"] = nb->log_prior;
    params["log_likelihood"] = nb->log_likelihood;
  } else if (const auto* linear = std::get_if<LinearModel>(&model.params)) {
    params["weights"] = linear->weights;
    params["bias"] = linear->bias;
    params["objective"] = linear->objective;
  } else if (const auto* knn = std::get_if<KnnModel>(&model.params)) {
    params["train_matrix"] = matrix_to_json(knn->train_matrix);
    params["labels"] = knn->labels;
  } else if (const auto* tree = std::get_if<TreeModel>(&model.params)) {
    params["nodes"] = tree_to_json(*tree);
  } else if (const auto* forest = std::get_if<ForestModel>(&model.params)) {
    json trees = json::array();
    for (const TreeModel& t : forest->trees) trees.push_back(tree_to_json(t));
    params["trees"] = std::move(trees);
  }
  j["parameters"] = std::move(params);
  out << j.dump(2) << '\n';
}

Model load_model(std::istream& in) {
  json j = json::parse(in);
  if (j.value("format", "") != "textbench-model") {
    throw Error(ErrorCode::schema, "not a textbench model dump");
  }
  if (j.at("version").get<int>() != 1) {
    throw Error(ErrorCode::schema,
                "unsupported model version " +
                    std::to_string(j.at("version").get<int>()));
  }
  Model model;
  model.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
  model.dim = j.at("dim").get<std::size_t>();
  model.num_classes = j.at("num_classes").get<std::size_t>();
  model.class_names = j.at("class_names").get<std::vector<std::string>>();
  model.hyperparameters =
      j.at("hyperparameters").get<std::map<std::string, std::string>>();
  model.train_fingerprint = j.at("train_fingerprint").get<std::string>();

  const json& params = j.at("parameters");
  switch (model.kind) {
    case ClassifierKind::multinomial_nb: {
      NbModel nb;
      nb.log_prior = params.at("log_prior").get<std::vector<double>>();
      nb.log_likelihood =
          params.at("log_likelihood").get<std::vector<std::vector<double>>>();
      model.params = std::move(nb);
      break;
    }
    case ClassifierKind::linear_svm:
    case ClassifierKind::logistic_regression: {
      LinearModel linear;
      linear.weights =
          params.at("weights").get<std::vector<std::vector<double>>>();
      linear.bias = params.at("bias").get<std::vector<double>>();
      linear.objective = params.at("objective").get<double>();
      model.params = std::move(linear);
      break;
    }
    case ClassifierKind::knn: {
      KnnModel knn;
      knn.train_matrix = matrix_from_json(params.at("train_matrix"));
      knn.labels = params.at("labels").get<std::vector<int>>();
      model.params = std::move(knn);
      break;
    }
    case ClassifierKind::decision_tree:
      model.params = tree_from_json(params.at("nodes"));
      break;
    case ClassifierKind::random_forest: {
      ForestModel forest;
      for (const auto& tree_json : params.at("trees")) {
        forest.trees.push_back(tree_from_json(tree_json));
      }
      model.params = std::move(forest);
      break;
    }
  }
  return model;
}

void save_model_file(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::io, "cannot write " + path.string());
  }
  save_model(model, out);
}

Model load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path.string());
  }
  return load_model(in);
}

}  // namespace textbench
