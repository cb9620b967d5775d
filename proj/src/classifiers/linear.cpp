// Apache License, Version 2.0, refer to LICENSE.txt
#include <algorithm>
#include <cmath>
#include <numeric>

#include "internal.hpp"

namespace textbench {

namespace {

double stable_log1p_exp(double z) {
  // log(1 + exp(z)) without overflow
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<int> binary_labels(const std::vector<int>& labels,
                               int positive_class) {
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = labels[i] == positive_class ? 1 : 0;
  }
  return out;
}

// ---- logistic regression ---------------------------------------------------

/// Limited-memory BFGS with Armijo backtracking on the concatenated
/// parameter vector [w; b]. Deterministic: zero start, fixed history.
struct LbfgsOptimizer {
  static constexpr std::size_t kHistory = 8;

  const SparseMatrix& matrix;
  const std::vector<int>& labels;
  double l2;

  double run(std::size_t max_iterations, double tol, std::vector<double>& w,
             double& b) {
    std::size_t n = w.size() + 1;
    std::vector<std::vector<double>> s_history, y_history;
    std::vector<double> rho_history;

    std::vector<double> grad_w(w.size(), 0.0);
    double grad_b = 0.0;
    double loss = lr_loss_gradient(matrix, labels, w, b, l2, &grad_w, &grad_b);

    std::vector<double> grad = pack(grad_w, grad_b);
    std::vector<double> params = pack(w, b);

    for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
      std::vector<double> direction = grad;
      two_loop(direction, s_history, y_history, rho_history);
      for (double& d : direction) d = -d;

      double directional = std::inner_product(
          grad.begin(), grad.end(), direction.begin(), 0.0);
      if (directional >= 0.0) {  // not a descent direction; reset to steepest
        s_history.clear();
        y_history.clear();
        rho_history.clear();
        for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
        directional = -std::inner_product(grad.begin(), grad.end(),
                                          grad.begin(), 0.0);
      }

      // Armijo backtracking
      double step = 1.0;
      if (s_history.empty()) {
        double gnorm = std::sqrt(-directional);
        step = gnorm > 0.0 ? 1.0 / (1.0 + gnorm) : 1.0;
      }
      std::vector<double> next_params(n);
      std::vector<double> next_w(w.size());
      double next_b = 0.0;
      double next_loss = loss;
      bool accepted = false;
      for (int halving = 0; halving < 50; ++halving) {
        for (std::size_t i = 0; i < n; ++i) {
          next_params[i] = params[i] + step * direction[i];
        }
        unpack(next_params, next_w, next_b);
        next_loss = lr_loss(next_w, next_b);
        if (next_loss <= loss + 1e-4 * step * directional) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // no progress possible at machine precision

      std::vector<double> next_grad_w(w.size(), 0.0);
      double next_grad_b = 0.0;
      lr_loss_gradient(matrix, labels, next_w, next_b, l2, &next_grad_w,
                       &next_grad_b);
      std::vector<double> next_grad = pack(next_grad_w, next_grad_b);

      std::vector<double> s(n), y(n);
      double sy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = next_params[i] - params[i];
        y[i] = next_grad[i] - grad[i];
        sy += s[i] * y[i];
      }
      if (sy > 1e-12) {
        if (s_history.size() == kHistory) {
          s_history.erase(s_history.begin());
          y_history.erase(y_history.begin());
          rho_history.erase(rho_history.begin());
        }
        s_history.push_back(std::move(s));
        y_history.push_back(std::move(y));
        rho_history.push_back(1.0 / sy);
      }

      double improvement = loss - next_loss;
      params = std::move(next_params);
      grad = std::move(next_grad);
      w = next_w;
      b = next_b;
      loss = next_loss;
      if (improvement >= 0.0 && improvement < tol) break;
    }
    return loss;
  }

 private:
  std::vector<double> pack(const std::vector<double>& w, double b) const {
    std::vector<double> packed(w.size() + 1);
    std::copy(w.begin(), w.end(), packed.begin());
    packed.back() = b;
    return packed;
  }

  void unpack(const std::vector<double>& packed, std::vector<double>& w,
              double& b) const {
    std::copy(packed.begin(), packed.end() - 1, w.begin());
    b = packed.back();
  }

  double lr_loss(const std::vector<double>& w, double b) const {
    return lr_loss_gradient(matrix, labels, w, b, l2, nullptr, nullptr);
  }

  void two_loop(std::vector<double>& q,
                const std::vector<std::vector<double>>& s_history,
                const std::vector<std::vector<double>>& y_history,
                const std::vector<double>& rho_history) const {
    std::size_t history = s_history.size();
    if (history == 0) return;
    std::vector<double> alpha(history);
    for (std::size_t idx = history; idx-- > 0;) {
      alpha[idx] = rho_history[idx] *
                   std::inner_product(s_history[idx].begin(),
                                      s_history[idx].end(), q.begin(), 0.0);
      for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] -= alpha[idx] * y_history[idx][i];
      }
    }
    const auto& last_s = s_history.back();
    const auto& last_y = y_history.back();
    double yy = std::inner_product(last_y.begin(), last_y.end(),
                                   last_y.begin(), 0.0);
    double sy = std::inner_product(last_s.begin(), last_s.end(),
                                   last_y.begin(), 0.0);
    if (yy > 0.0 && sy > 0.0) {
      double gamma = sy / yy;
      for (double& qi : q) qi *= gamma;
    }
    for (std::size_t idx = 0; idx < history; ++idx) {
      double beta = rho_history[idx] *
                    std::inner_product(y_history[idx].begin(),
                                       y_history[idx].end(), q.begin(), 0.0);
      for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] += (alpha[idx] - beta) * s_history[idx][i];
      }
    }
  }
};

std::pair<std::vector<double>, double> fit_logistic_binary(
    const SparseMatrix& matrix, const std::vector<int>& labels,
    const LrParams& params, double* final_loss) {
  std::vector<double> w(matrix.dim, 0.0);
  double b = 0.0;
  LbfgsOptimizer optimizer{matrix, labels, params.l2};
  double loss = optimizer.run(params.epochs, params.tol, w, b);
  if (final_loss != nullptr) *final_loss = loss;
  return {std::move(w), b};
}

// ---- linear svm ------------------------------------------------------------

struct PegasosResult {
  std::vector<double> weights;
  double bias = 0.0;
};

/// Pegasos-style stochastic subgradient descent on the regularized hinge
/// objective. The weight vector is kept as scale * values so the per-step
/// shrink stays O(1).
PegasosResult fit_svm_binary(const SparseMatrix& matrix,
                             const std::vector<int>& labels,
                             const SvmParams& params, std::uint64_t seed) {
  std::size_t n = labels.size();
  double lambda = 1.0 / (params.c * static_cast<double>(n));

  std::vector<double> values(matrix.dim, 0.0);
  double scale = 1.0;
  double bias = 0.0;

  detail::Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    detail::shuffle(order, rng);
    for (std::size_t i : order) {
      ++t;
      double eta = 1.0 / (lambda * static_cast<double>(t));
      const SparseVector& row = matrix.rows[i];
      double y = labels[i] == 1 ? 1.0 : -1.0;
      double margin = y * (scale * detail::sparse_dot(row, values) + bias);
      double factor = 1.0 - eta * lambda;
      if (factor <= 0.0) {  // only at t == 1: the shrink zeroes the weights
        std::fill(values.begin(), values.end(), 0.0);
        scale = 1.0;
      } else {
        scale *= factor;
      }
      if (margin < 1.0) {
        double update = eta * y / scale;
        for (const auto& [column, weight] : row.entries) {
          values[column] += update * weight;
        }
        bias += eta * y;
      }
      if (scale < 1e-9) {
        for (double& v : values) v *= scale;
        scale = 1.0;
      }
    }
  }

  PegasosResult result;
  result.weights.resize(matrix.dim);
  for (std::size_t i = 0; i < matrix.dim; ++i) {
    result.weights[i] = scale * values[i];
  }
  result.bias = bias;
  return result;
}

}  // namespace

double lr_loss_gradient(const SparseMatrix& matrix,
                        const std::vector<int>& labels,
                        const std::vector<double>& weights, double bias,
                        double l2, std::vector<double>* grad_w,
                        double* grad_b) {
  auto n = static_cast<double>(labels.size());
  double loss = 0.0;
  if (grad_w != nullptr) std::fill(grad_w->begin(), grad_w->end(), 0.0);
  double residual_sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const SparseVector& row = matrix.rows[i];
    double z = detail::sparse_dot(row, weights) + bias;
    double y = static_cast<double>(labels[i]);
    loss += stable_log1p_exp(z) - y * z;
    double residual = sigmoid(z) - y;
    residual_sum += residual;
    if (grad_w != nullptr) {
      for (const auto& [column, weight] : row.entries) {
        (*grad_w)[column] += residual * weight;
      }
    }
  }
  loss /= n;
  double weight_norm = std::inner_product(weights.begin(), weights.end(),
                                          weights.begin(), 0.0);
  loss += 0.5 * (l2 / n) * weight_norm;
  if (grad_w != nullptr) {
    for (std::size_t j = 0; j < weights.size(); ++j) {
      (*grad_w)[j] = (*grad_w)[j] / n + (l2 / n) * weights[j];
    }
  }
  if (grad_b != nullptr) *grad_b = residual_sum / n;
  return loss;
}

double svm_objective(const SparseMatrix& matrix,
                     const std::vector<int>& labels,
                     const std::vector<double>& weights, double bias,
                     double c) {
  auto n = static_cast<double>(labels.size());
  double lambda = 1.0 / (c * n);
  double hinge = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    double y = labels[i] == 1 ? 1.0 : -1.0;
    double margin =
        y * (detail::sparse_dot(matrix.rows[i], weights) + bias);
    hinge += std::max(0.0, 1.0 - margin);
  }
  double weight_norm = std::inner_product(weights.begin(), weights.end(),
                                          weights.begin(), 0.0);
  return 0.5 * lambda * weight_norm + hinge / n;
}

Model train_logistic_regression(const TrainSet& data, const LrParams& params,
                                std::uint64_t seed) {
  detail::validate_train_set(data, "logistic_regression");
  std::size_t num_classes = data.num_classes();

  LinearModel linear;
  double loss = 0.0;
  if (num_classes == 2) {
    auto [w, b] =
        fit_logistic_binary(data.matrix, binary_labels(data.labels, 1),
                            params, &loss);
    linear.weights.push_back(std::move(w));
    linear.bias.push_back(b);
  } else {
    // one-vs-rest
    for (std::size_t c = 0; c < num_classes; ++c) {
      double class_loss = 0.0;
      auto [w, b] = fit_logistic_binary(
          data.matrix, binary_labels(data.labels, static_cast<int>(c)),
          params, &class_loss);
      linear.weights.push_back(std::move(w));
      linear.bias.push_back(b);
      loss += class_loss;
    }
  }
  linear.objective = loss;

  Model model;
  model.kind = ClassifierKind::logistic_regression;
  model.dim = data.matrix.dim;
  model.num_classes = num_classes;
  model.class_names = data.class_names;
  model.hyperparameters = {{"l2", std::to_string(params.l2)},
                           {"epochs", std::to_string(params.epochs)},
                           {"tol", std::to_string(params.tol)},
                           {"seed", std::to_string(seed)}};
  model.train_fingerprint = detail::fingerprint(data, model.hyperparameters);
  model.params = std::move(linear);
  return model;
}

Model train_linear_svm(const TrainSet& data, const SvmParams& params,
                       std::uint64_t seed) {
  detail::validate_train_set(data, "linear_svm");
  if (params.c <= 0.0) {
    throw Error(ErrorCode::training, "linear_svm: c must be > 0");
  }
  std::size_t num_classes = data.num_classes();

  LinearModel linear;
  double objective = 0.0;
  if (num_classes == 2) {
    std::vector<int> labels = binary_labels(data.labels, 1);
    PegasosResult fit = fit_svm_binary(data.matrix, labels, params, seed);
    objective = svm_objective(data.matrix, labels, fit.weights, fit.bias,
                              params.c);
    linear.weights.push_back(std::move(fit.weights));
    linear.bias.push_back(fit.bias);
  } else {
    for (std::size_t c = 0; c < num_classes; ++c) {
      std::vector<int> labels =
          binary_labels(data.labels, static_cast<int>(c));
      PegasosResult fit = fit_svm_binary(data.matrix, labels, params,
                                         seed + c);
      objective += svm_objective(data.matrix, labels, fit.weights, fit.bias,
                                 params.c);
      linear.weights.push_back(std::move(fit.weights));
      linear.bias.push_back(fit.bias);
    }
  }
  linear.objective = objective;

  Model model;
  model.kind = ClassifierKind::linear_svm;
  model.dim = data.matrix.dim;
  model.num_classes = num_classes;
  model.class_names = data.class_names;
  model.hyperparameters = {{"c", std::to_string(params.c)},
                           {"epochs", std::to_string(params.epochs)},
                           {"seed", std::to_string(seed)}};
  model.train_fingerprint = detail::fingerprint(data, model.hyperparameters);
  model.params = std::move(linear);
  return model;
}

}  // namespace textbench
