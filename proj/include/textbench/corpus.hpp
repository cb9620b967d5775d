// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace textbench {

enum class Split { unassigned, train, test };

/// One review: raw text plus its class and train/test assignment.
struct Document {
  std::string id;  // relative file path (imdb) or row index (alexa)
  std::string text;
  int label = 0;  // index into Corpus::class_names
  Split split = Split::unassigned;
};

struct LoadReport {
  std::size_t loaded = 0;
  std::size_t dropped = 0;      // rows with missing text or label
  std::size_t undecodable = 0;  // files/rows with invalid UTF-8 (repaired)
};

struct Corpus {
  std::string name;  // "imdb" | "alexa" | fixture name
  std::vector<Document> documents;
  std::vector<std::string> class_names;  // ordered by class id
  LoadReport load_report;

  std::size_t class_count(int label) const;
};

/// Raw pre-document record as read from a tabular source.
struct RawRecord {
  std::string text;
  std::string label;
};

/// Loads the aclImdb directory layout: (train|test)/(pos|neg)/*.txt.
/// Documents are ordered lexicographically by relative path. Files that
/// cannot be opened are skipped and counted; invalid UTF-8 bytes are
/// replaced with U+FFFD and counted as undecodable.
Corpus load_imdb(const std::filesystem::path& root);

struct AlexaOptions {
  std::string text_column = "verified_reviews";
  std::string label_column = "feedback";  // 1 = positive, 0 = negative
};

/// Loads a header-ed TSV of reviews. Rows missing text or label are
/// dropped and counted. No split is assigned.
Corpus load_alexa(const std::filesystem::path& tsv_path,
                  const AlexaOptions& options = {});

/// Keeps exactly the records where both fields are non-blank after
/// trimming; preserves order. Returns (kept, dropped_count).
std::pair<std::vector<RawRecord>, std::size_t> drop_missing(
    const std::vector<RawRecord>& rows);

/// Stratified train/test assignment. Per-class test counts are
/// round(class_size * test_fraction); the assignment is a pure function of
/// (seed, document ids) and therefore invariant under document reordering.
Corpus split_corpus(Corpus corpus, double test_fraction, std::uint64_t seed);

/// Deterministic stratified subsample preserving (split, class) proportions.
/// target = 0 returns the corpus unchanged.
Corpus stratified_subsample(const Corpus& corpus, std::size_t target,
                            std::uint64_t seed);

}  // namespace textbench
