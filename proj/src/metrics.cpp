// Apache License, Version 2.0, refer to LICENSE.txt
#include "textbench/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "textbench/error.hpp"

namespace textbench {

std::size_t ConfusionCounts::total() const {
  return std::accumulate(table.begin(), table.end(), std::size_t{0});
}

std::size_t ConfusionCounts::false_positives(std::size_t c) const {
  std::size_t count = 0;
  for (std::size_t t = 0; t < num_classes; ++t) {
    if (t != c) count += at(t, c);
  }
  return count;
}

std::size_t ConfusionCounts::false_negatives(std::size_t c) const {
  std::size_t count = 0;
  for (std::size_t p = 0; p < num_classes; ++p) {
    if (p != c) count += at(c, p);
  }
  return count;
}

std::size_t ConfusionCounts::support(std::size_t c) const {
  std::size_t count = 0;
  for (std::size_t p = 0; p < num_classes; ++p) count += at(c, p);
  return count;
}

ConfusionCounts confusion(const std::vector<int>& truth,
                          const std::vector<int>& predicted,
                          std::size_t num_classes) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::contract,
                "confusion: length mismatch, truth has " +
                    std::to_string(truth.size()) + " labels, predictions " +
                    std::to_string(predicted.size()));
  }
  ConfusionCounts counts;
  counts.num_classes = num_classes;
  counts.table.assign(num_classes * num_classes, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto t = static_cast<std::size_t>(truth[i]);
    auto p = static_cast<std::size_t>(predicted[i]);
    if (t >= num_classes || p >= num_classes) {
      throw Error(ErrorCode::contract,
                  "confusion: class id out of range at row " +
                      std::to_string(i));
    }
    ++counts.table[t * num_classes + p];
  }
  return counts;
}

double accuracy(const ConfusionCounts& counts) {
  std::size_t total = counts.total();
  if (total == 0) {
    throw Error(ErrorCode::metric, "accuracy undefined for zero documents");
  }
  std::size_t correct = 0;
  for (std::size_t c = 0; c < counts.num_classes; ++c) {
    correct += counts.at(c, c);
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

MetricBundle precision_recall_f1(const ConfusionCounts& counts,
                                 Averaging averaging) {
  std::size_t total = counts.total();
  if (total == 0) {
    throw Error(ErrorCode::metric, "metrics undefined for zero documents");
  }
  MetricBundle bundle;
  bundle.per_class.reserve(counts.num_classes);
  for (std::size_t c = 0; c < counts.num_classes; ++c) {
    auto tp = static_cast<double>(counts.true_positives(c));
    auto fp = static_cast<double>(counts.false_positives(c));
    auto fn = static_cast<double>(counts.false_negatives(c));
    ClassMetrics m;
    m.support = counts.support(c);
    if (tp + fp > 0.0) {
      m.precision = 100.0 * tp / (tp + fp);
    } else {
      bundle.zero_division = true;  // no predicted positives
    }
    if (tp + fn > 0.0) {
      m.recall = 100.0 * tp / (tp + fn);
    } else {
      bundle.zero_division = true;  // no actual positives
    }
    if (m.precision + m.recall > 0.0) {
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    bundle.per_class.push_back(m);
  }

  switch (averaging) {
    case Averaging::per_class:
      break;  // aggregates stay zero; per_class carries the result
    case Averaging::macro: {
      double n = static_cast<double>(counts.num_classes);
      for (const ClassMetrics& m : bundle.per_class) {
        bundle.precision += m.precision / n;
        bundle.recall += m.recall / n;
        bundle.f1 += m.f1 / n;
      }
      break;
    }
    case Averaging::weighted: {
      auto denom = static_cast<double>(total);
      for (const ClassMetrics& m : bundle.per_class) {
        auto weight = static_cast<double>(m.support) / denom;
        bundle.precision += weight * m.precision;
        bundle.recall += weight * m.recall;
        bundle.f1 += weight * m.f1;
      }
      break;
    }
  }
  return bundle;
}

std::string format_metric(double value) {
  // ties round to even, matching the reported-table convention
  double scaled = std::nearbyint(value * 100.0);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", scaled / 100.0);
  return buffer;
}

std::string EvalReport::csv_header() {
  return "dataset,feature,classifier,accuracy,precision,recall,f1";
}

std::string EvalReport::csv_row() const {
  return dataset + "," + feature_scheme + "," + classifier + "," +
         format_metric(accuracy) + "," + format_metric(precision) + "," +
         format_metric(recall) + "," + format_metric(f1);
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["dataset"] = dataset;
  j["feature"] = feature_scheme;
  j["classifier"] = classifier;
  j["accuracy"] = accuracy;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["zero_division"] = zero_division;
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    classes.push_back({{"class", c},
                       {"precision", per_class[c].precision},
                       {"recall", per_class[c].recall},
                       {"f1", per_class[c].f1},
                       {"support", per_class[c].support}});
  }
  j["per_class"] = classes;
  j["config"] = config_snapshot;
  return j.dump(2);
}

EvalReport EvalReport::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EvalReport report;
  report.dataset = j.at("dataset").get<std::string>();
  report.feature_scheme = j.at("feature").get<std::string>();
  report.classifier = j.at("classifier").get<std::string>();
  report.accuracy = j.at("accuracy").get<double>();
  report.precision = j.at("precision").get<double>();
  report.recall = j.at("recall").get<double>();
  report.f1 = j.at("f1").get<double>();
  report.zero_division = j.value("zero_division", false);
  for (const auto& entry : j.at("per_class")) {
    ClassMetrics m;
    m.precision = entry.at("precision").get<double>();
    m.recall = entry.at("recall").get<double>();
    m.f1 = entry.at("f1").get<double>();
    m.support = entry.at("support").get<std::size_t>();
    report.per_class.push_back(m);
  }
  if (j.contains("config")) {
    report.config_snapshot =
        j.at("config").get<std::map<std::string, std::string>>();
  }
  return report;
}

}  // namespace textbench
