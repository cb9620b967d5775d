// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace textbench {

/// Exact (true class, predicted class) tabulation.
struct ConfusionCounts {
  std::size_t num_classes = 0;
  std::vector<std::size_t> table;  // row-major: [true * num_classes + pred]

  std::size_t at(std::size_t truth, std::size_t pred) const {
    return table[truth * num_classes + pred];
  }
  std::size_t total() const;
  std::size_t true_positives(std::size_t c) const { return at(c, c); }
  std::size_t false_positives(std::size_t c) const;
  std::size_t false_negatives(std::size_t c) const;
  std::size_t support(std::size_t c) const;  // true-label count
};

struct ClassMetrics {
  double precision = 0.0;  // percentages in [0, 100]
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

enum class Averaging { weighted, macro, per_class };

struct MetricBundle {
  double precision = 0.0;  // aggregate, per the averaging mode
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<ClassMetrics> per_class;
  bool zero_division = false;  // some class had no predicted/actual positives
};

ConfusionCounts confusion(const std::vector<int>& truth,
                          const std::vector<int>& predicted,
                          std::size_t num_classes);

/// 100 * correct / total. Throws for an empty tabulation.
double accuracy(const ConfusionCounts& counts);

/// Per class: P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R), with zero
/// denominators contributing 0. Weighted averaging weights by true-label
/// support, which makes weighted recall coincide with accuracy.
MetricBundle precision_recall_f1(const ConfusionCounts& counts,
                                 Averaging averaging = Averaging::weighted);

/// One evaluation cell: metrics plus the full configuration that produced
/// them.
struct EvalReport {
  std::string dataset;
  std::string feature_scheme;  // "ngram" | "tfidf"
  std::string classifier;
  double accuracy = 0.0;  // percentages
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<ClassMetrics> per_class;
  bool zero_division = false;
  std::map<std::string, std::string> config_snapshot;

  /// Stable column order: dataset, feature, classifier, A, P, R, F1.
  /// Metrics are formatted to two decimals, round-half-even.
  std::string csv_row() const;
  static std::string csv_header();
  std::string to_json() const;
  static EvalReport from_json(const std::string& text);
};

/// Two-decimal fixed formatting with ties rounded to even, the format used
/// in every emitted table.
std::string format_metric(double value);

}  // namespace textbench
