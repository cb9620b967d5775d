// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "textbench/corpus.hpp"

namespace textbench {

struct Token {
  std::string surface;
  std::size_t position = 0;  // 0-based index within the document
};

struct TokenStream {
  std::string doc_id;
  std::vector<Token> tokens;
};

enum class Reducer { none, stem, lemmatize };

using StopwordSet = std::unordered_set<std::string>;
using WordMap = std::unordered_map<std::string, std::string>;

struct PipelineConfig {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool expand_abbreviations = true;
  bool numbers_to_words = false;
  StopwordSet stopwords;     // entries must be lowercase
  WordMap abbreviations;     // lowercase surface -> expansion
  WordMap lemmas;            // inflected form -> base form
  Reducer reducer = Reducer::stem;

  /// Benchmark defaults with the bundled resource tables attached.
  static PipelineConfig defaults();
};

/// Splits on Unicode whitespace, then strips leading/trailing punctuation
/// from each piece. Empty pieces are discarded; case is preserved.
std::vector<std::string> tokenize(std::string_view text);

/// Lowercasing, abbreviation expansion and digit-to-word conversion, in
/// that order, per the config flags. Tokens that become empty are removed;
/// expansions containing spaces are re-split into several tokens.
std::vector<std::string> normalize(const std::vector<std::string>& tokens,
                                   const PipelineConfig& config);

/// Porter suffix-stripping. Expects a lowercase word; never returns an
/// empty string for non-empty input.
std::string stem(std::string_view word);

/// Dictionary lemma lookup; unknown words pass through unchanged.
std::string lemmatize(std::string_view word, const WordMap& lemmas);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stopwords);

/// Drops pure-punctuation tokens, markup remnants (anything containing
/// '<' or '>'), and pure-digit tokens when numbers_to_words is disabled.
/// Positions are renumbered densely.
TokenStream remove_noise(const TokenStream& stream,
                         const PipelineConfig& config);

/// Full pipeline: tokenize -> normalize -> remove_stopwords -> reducer ->
/// remove_noise. Pure function of (document text, config).
TokenStream run_pipeline(const Document& doc, const PipelineConfig& config);

/// Converts a run of ASCII digits to lowercase English number words
/// ("42" -> {"forty", "two"}); digit-by-digit for leading zeros or more
/// than 12 digits.
std::vector<std::string> number_to_words(std::string_view digits);

// Resource files: stopwords are one word per line, maps are two
// tab-separated columns. '#' comments and blank lines are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);
WordMap load_word_map(const std::filesystem::path& path);

StopwordSet parse_stopwords(std::string_view content);
WordMap parse_word_map(std::string_view content);

const StopwordSet& bundled_stopwords();
const WordMap& bundled_abbreviations();
const WordMap& bundled_lemmas();

}  // namespace textbench
