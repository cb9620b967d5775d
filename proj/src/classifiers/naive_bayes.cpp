// Apache License, Version 2.0, refer to LICENSE.txt
#include <cmath>

#include "internal.hpp"

namespace textbench {

Model train_multinomial_nb(const TrainSet& data, const NbParams& params) {
  detail::validate_train_set(data, "multinomial_nb");
  if (params.alpha < 0.0) {
    throw Error(ErrorCode::training, "multinomial_nb: alpha must be >= 0");
  }
  std::size_t num_classes = data.num_classes();
  std::size_t dim = data.matrix.dim;

  std::vector<std::size_t> class_docs(num_classes, 0);
  std::vector<std::vector<double>> term_sums(
      num_classes, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < data.matrix.rows.size(); ++i) {
    auto c = static_cast<std::size_t>(data.labels[i]);
    ++class_docs[c];
    for (const auto& [column, weight] : data.matrix.rows[i].entries) {
      if (weight < 0.0) {
        throw Error(ErrorCode::training,
                    "multinomial_nb: negative feature weight at row " +
                        std::to_string(i));
      }
      term_sums[c][column] += weight;
    }
  }

  NbModel nb;
  nb.log_prior.resize(num_classes);
  nb.log_likelihood.assign(num_classes, std::vector<double>(dim, 0.0));
  auto total_docs = static_cast<double>(data.labels.size());
  for (std::size_t c = 0; c < num_classes; ++c) {
    nb.log_prior[c] =
        std::log(static_cast<double>(class_docs[c]) / total_docs);
    double class_total = 0.0;
    for (double v : term_sums[c]) class_total += v;
    double denominator =
        class_total + params.alpha * static_cast<double>(dim);
    for (std::size_t t = 0; t < dim; ++t) {
      double numerator = term_sums[c][t] + params.alpha;
      if (numerator <= 0.0) {
        throw Error(ErrorCode::training,
                    "multinomial_nb: term " + std::to_string(t) +
                        " is absent from class " + std::to_string(c) +
                        " and alpha is 0; use alpha > 0");
      }
      nb.log_likelihood[c][t] = std::log(numerator / denominator);
    }
  }

  Model model;
  model.kind = ClassifierKind::multinomial_nb;
  model.dim = dim;
  model.num_classes = num_classes;
  model.class_names = data.class_names;
  model.hyperparameters = {{"alpha", std::to_string(params.alpha)}};
  model.train_fingerprint = detail::fingerprint(data, model.hyperparameters);
  model.params = std::move(nb);
  return model;
}

}  // namespace textbench
