// Apache License, Version 2.0, refer to LICENSE.txt
#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"

namespace textbench {

namespace {

std::string to_string(KnnMetric metric) {
  return metric == KnnMetric::cosine ? "cosine" : "euclidean";
}

double row_norm_squared(const SparseVector& row) {
  double total = 0.0;
  for (const auto& [column, weight] : row.entries) total += weight * weight;
  return total;
}

}  // namespace

Model train_knn(const TrainSet& data, const KnnParams& params) {
  detail::validate_train_set(data, "knn");
  if (params.k < 1) {
    throw Error(ErrorCode::training, "knn: k must be >= 1");
  }
  if (params.k > data.labels.size()) {
    throw Error(ErrorCode::training,
                "knn: k=" + std::to_string(params.k) + " exceeds " +
                    std::to_string(data.labels.size()) + " training rows");
  }
  Model model;
  model.kind = ClassifierKind::knn;
  model.dim = data.matrix.dim;
  model.num_classes = data.num_classes();
  model.class_names = data.class_names;
  model.hyperparameters = {{"k", std::to_string(params.k)},
                           {"metric", to_string(params.metric)}};
  model.train_fingerprint = detail::fingerprint(data, model.hyperparameters);
  model.params = KnnModel{data.matrix, data.labels};
  return model;
}

std::vector<int> predict_knn(const Model& model, const SparseMatrix& matrix) {
  const auto& knn = std::get<KnnModel>(model.params);
  std::size_t k = std::stoull(model.hyperparameters.at("k"));
  bool cosine = model.hyperparameters.at("metric") == "cosine";
  std::size_t n_train = knn.train_matrix.rows.size();

  // postings per column so each query only touches rows sharing a term
  std::vector<std::vector<std::pair<std::uint32_t, double>>> postings(
      model.dim);
  for (std::uint32_t r = 0; r < n_train; ++r) {
    for (const auto& [column, weight] : knn.train_matrix.rows[r].entries) {
      postings[column].emplace_back(r, weight);
    }
  }
  std::vector<double> train_norms(n_train);
  for (std::size_t r = 0; r < n_train; ++r) {
    train_norms[r] = row_norm_squared(knn.train_matrix.rows[r]);
  }

  std::vector<int> out;
  out.reserve(matrix.rows.size());
  std::vector<double> dots(n_train);
  std::vector<std::size_t> candidates(n_train);
  std::iota(candidates.begin(), candidates.end(), 0);
  std::vector<double> distances(n_train);

  for (const SparseVector& query : matrix.rows) {
    std::fill(dots.begin(), dots.end(), 0.0);
    for (const auto& [column, weight] : query.entries) {
      for (const auto& [row, train_weight] : postings[column]) {
        dots[row] += weight * train_weight;
      }
    }
    double query_norm = row_norm_squared(query);
    for (std::size_t r = 0; r < n_train; ++r) {
      if (cosine) {
        double denominator = std::sqrt(query_norm * train_norms[r]);
        double similarity = denominator > 0.0 ? dots[r] / denominator : 0.0;
        distances[r] = 1.0 - similarity;
      } else {
        distances[r] = query_norm + train_norms[r] - 2.0 * dots[r];
      }
    }

    std::vector<std::size_t> order = candidates;
    const auto closer = [&](std::size_t a, std::size_t b) {
      if (distances[a] != distances[b]) return distances[a] < distances[b];
      return a < b;  // stable tie-break on training row index
    };
    std::nth_element(order.begin(), order.begin() + (k - 1), order.end(),
                     closer);
    std::sort(order.begin(), order.begin() + k, closer);

    std::vector<double> votes(model.num_classes, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      votes[static_cast<std::size_t>(knn.labels[order[i]])] += 1.0;
    }
    out.push_back(static_cast<int>(detail::argmax_lowest(votes)));
  }
  return out;
}

}  // namespace textbench
