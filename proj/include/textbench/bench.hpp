// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "textbench/classifiers.hpp"
#include "textbench/metrics.hpp"

namespace textbench {

enum class FeatureScheme { ngram, tfidf };

std::string to_string(FeatureScheme scheme);

/// Everything a grid run depends on. Fully serializable as a flat
/// key=value document; unknown keys are rejected.
struct RunConfig {
  // datasets
  std::string imdb_dir;
  std::string alexa_tsv;
  std::vector<std::string> datasets = {"imdb", "alexa"};
  std::string alexa_text_column = "verified_reviews";
  std::string alexa_label_column = "feedback";
  double alexa_test_fraction = 0.2;
  std::size_t imdb_subsample = 0;  // 0 = full corpus

  // grid
  std::vector<FeatureScheme> features = {FeatureScheme::ngram,
                                         FeatureScheme::tfidf};
  std::vector<ClassifierKind> classifiers = {
      ClassifierKind::multinomial_nb,   ClassifierKind::linear_svm,
      ClassifierKind::knn,              ClassifierKind::logistic_regression,
      ClassifierKind::decision_tree,    ClassifierKind::random_forest};

  // preprocessing
  bool lowercase = true;
  bool strip_punctuation = true;
  bool expand_abbreviations = true;
  bool numbers_to_words = false;
  std::string reducer = "stem";  // none | stem | lemmatize
  std::string stopwords_path;    // empty = bundled list
  std::string abbrev_path;
  std::string lemma_path;

  // features
  std::size_t ngram_n = 2;
  std::size_t tfidf_ngram_n = 1;
  std::size_t min_df = 2;
  std::size_t max_features = 50000;
  std::string idf_variant = "log10";  // log10 | ln | raw

  // classifier hyperparameters
  double nb_alpha = 1.0;
  double svm_c = 1.0;
  std::size_t svm_epochs = 20;
  double lr_l2 = 1.0;
  std::size_t lr_epochs = 100;
  double lr_tol = 1e-6;
  std::size_t knn_k = 5;
  std::string knn_metric = "cosine";
  std::size_t tree_max_depth = 0;  // 0 = unlimited
  std::size_t tree_min_leaf = 1;
  std::size_t forest_trees = 100;
  std::size_t forest_max_depth = 0;
  double forest_feature_subsample = 0.0;  // 0 = sqrt

  // run
  std::uint64_t seed = 42;
  std::string out_dir = "bench_out";
  std::vector<std::string> report_formats = {"csv", "markdown"};
  bool dump_vocab = false;

  /// Applies one "key = value" assignment; throws on unknown keys or
  /// unparsable values.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  std::map<std::string, std::string> to_kv() const;
  static std::vector<std::string> keys();

  /// Flat key=value file ('#' comments) or a flat JSON object; the format
  /// is detected from the content. TEXTBENCH_OUT_DIR, when set, overrides
  /// out_dir.
  static RunConfig load(const std::filesystem::path& path);
  static RunConfig from_kv(const std::map<std::string, std::string>& kv);
};

struct GridCell {
  std::string dataset;
  FeatureScheme feature = FeatureScheme::ngram;
  ClassifierKind classifier = ClassifierKind::multinomial_nb;
  EvalReport report;
  double wall_ms = 0.0;
  std::string error;  // non-empty marks a failed cell

  bool failed() const { return !error.empty(); }
};

struct GridResult {
  std::vector<GridCell> cells;
  std::map<std::string, std::string> config;  // full snapshot
  std::string environment;                    // informational only
  std::map<std::string, std::string> vocab_dumps;  // key: dataset/scheme

  std::size_t failed_count() const;
  std::string to_json() const;
  static GridResult from_json(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static GridResult load(const std::filesystem::path& path);
};

/// Runs the configured (dataset x feature x classifier) grid. A failing
/// cell is recorded in place and never aborts the remaining cells.
GridResult run_grid(const RunConfig& config);

/// Writes per-scheme tables plus plot data and the config snapshot:
/// {scheme}_table.csv/.md per requested format, plotdata.csv,
/// run_config.json, grid_result.json (json format). Returns the files
/// written. Checks writability before any partial write.
std::vector<std::filesystem::path> emit_reports(
    const GridResult& result, const std::set<std::string>& formats,
    const std::filesystem::path& out_dir);

struct MetricDelta {
  std::string dataset;
  std::string classifier;
  // tfidf minus ngram, per metric
  double accuracy = 0.0, precision = 0.0, recall = 0.0, f1 = 0.0;
};

struct MetricMax {
  std::string metric;
  double value = 0.0;
  std::string dataset, feature, classifier;
};

struct ComparisonSummary {
  bool available = false;
  std::string note;  // set when the comparison is unavailable
  std::vector<MetricDelta> deltas;
  std::vector<MetricMax> maxima;  // one per metric

  std::string to_json() const;
  std::string to_text() const;
};

/// Per (dataset, classifier) metric deltas (tfidf - ngram) plus global
/// per-metric maxima.
ComparisonSummary compare_features(const GridResult& result);

/// Human-readable per-scheme tables, the same content as the markdown
/// report files.
std::string summary_tables(const GridResult& result);

}  // namespace textbench
