// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "textbench/preprocess.hpp"

namespace textbench {

/// Term -> column mapping with per-term document frequencies, built from
/// the training split only.
struct Vocabulary {
  std::vector<std::string> terms;  // lexicographic, index == column id
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::uint32_t> doc_freq;  // n_i per column, always >= 1
  std::size_t num_docs = 0;             // N

  std::size_t size() const { return terms.size(); }
};

struct SparseVector {
  // (column, weight) pairs with strictly increasing columns; zero weights
  // are never stored.
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::size_t dim = 0;

  double sum() const;
};

struct SparseMatrix {
  std::vector<SparseVector> rows;  // document order preserved
  std::size_t dim = 0;
};

enum class IdfVariant {
  log10,      // log10(N / n_i), the default
  natural,    // ln(N / n_i)
  raw_ratio,  // N / n_i with no logarithm
};

/// All contiguous n-token windows joined with single spaces, in order.
std::vector<std::string> extract_ngrams(const TokenStream& stream,
                                        std::size_t n);

/// Distinct n-grams with doc_freq >= min_df, ranked by (doc_freq desc,
/// term asc), truncated to max_features (0 = unbounded), then re-sorted
/// lexicographically for stable column ids. Throws on an empty training set.
Vocabulary build_vocabulary(const std::vector<TokenStream>& streams,
                            std::size_t n, std::size_t min_df = 1,
                            std::size_t max_features = 0);

/// Raw occurrence counts of in-vocabulary n-grams; out-of-vocabulary
/// n-grams are ignored.
SparseVector count_vectorize(const TokenStream& stream,
                             const Vocabulary& vocab, std::size_t n);

SparseMatrix count_vectorize_all(const std::vector<TokenStream>& streams,
                                 const Vocabulary& vocab, std::size_t n);

/// Each weight divided by the document's total in-vocabulary count, so
/// weights sum to 1. An empty input stays empty.
SparseVector term_frequency(const SparseVector& counts);

/// Per-column IDF from training statistics: idf[t] = f(num_docs /
/// doc_freq[t]) per the chosen variant.
std::vector<double> inverse_document_frequency(
    const Vocabulary& vocab, IdfVariant variant = IdfVariant::log10);

/// TF x IDF per entry. Entries whose weight becomes zero (idf == 0) are
/// dropped; dimensions are unchanged.
SparseMatrix tfidf_transform(const SparseMatrix& counts,
                             const Vocabulary& vocab,
                             IdfVariant variant = IdfVariant::log10);

/// Audit dump: one "term <TAB> column <TAB> doc_freq <TAB> idf" line per
/// term, in column order.
void dump_vocabulary(const Vocabulary& vocab, const std::vector<double>& idf,
                     std::ostream& out);

}  // namespace textbench
