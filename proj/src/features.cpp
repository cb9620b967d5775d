// Apache License, Version 2.0, refer to LICENSE.txt
#include "textbench/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "textbench/error.hpp"

namespace textbench {

double SparseVector::sum() const {
  double total = 0.0;
  for (const auto& [column, weight] : entries) total += weight;
  return total;
}

std::vector<std::string> extract_ngrams(const TokenStream& stream,
                                        std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::contract, "n-gram order must be >= 1");
  }
  std::vector<std::string> grams;
  if (stream.tokens.size() < n) return grams;
  grams.reserve(stream.tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= stream.tokens.size(); ++i) {
    std::string gram = stream.tokens[i].surface;
    for (std::size_t j = 1; j < n; ++j) {
      gram += ' ';
      gram += stream.tokens[i + j].surface;
    }
    grams.push_back(std::move(gram));
  }
  return grams;
}

Vocabulary build_vocabulary(const std::vector<TokenStream>& streams,
                            std::size_t n, std::size_t min_df,
                            std::size_t max_features) {
  if (streams.empty()) {
    throw Error(ErrorCode::contract,
                "cannot build a vocabulary from an empty training set");
  }
  std::unordered_map<std::string, std::uint32_t> doc_freq;
  std::unordered_set<std::string> seen;
  for (const TokenStream& stream : streams) {
    seen.clear();
    for (std::string& gram : extract_ngrams(stream, n)) {
      if (seen.insert(gram).second) ++doc_freq[std::move(gram)];
    }
  }

  if (min_df < 1) min_df = 1;
  std::vector<std::pair<std::string, std::uint32_t>> ranked;
  ranked.reserve(doc_freq.size());
  for (auto& [term, freq] : doc_freq) {
    if (freq >= min_df) ranked.emplace_back(term, freq);
  }
  // rank by (doc_freq desc, term asc) before truncation so the cut keeps
  // the most frequent terms deterministically
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (max_features > 0 && ranked.size() > max_features) {
    ranked.resize(max_features);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  Vocabulary vocab;
  vocab.num_docs = streams.size();
  vocab.terms.reserve(ranked.size());
  vocab.doc_freq.reserve(ranked.size());
  for (auto& [term, freq] : ranked) {
    vocab.index.emplace(term, static_cast<std::uint32_t>(vocab.terms.size()));
    vocab.terms.push_back(std::move(term));
    vocab.doc_freq.push_back(freq);
  }
  return vocab;
}

SparseVector count_vectorize(const TokenStream& stream,
                             const Vocabulary& vocab, std::size_t n) {
  std::map<std::uint32_t, double> counts;  // ordered: columns come out sorted
  for (const std::string& gram : extract_ngrams(stream, n)) {
    auto it = vocab.index.find(gram);
    if (it != vocab.index.end()) counts[it->second] += 1.0;
  }
  SparseVector vec;
  vec.dim = vocab.size();
  vec.entries.assign(counts.begin(), counts.end());
  return vec;
}

SparseMatrix count_vectorize_all(const std::vector<TokenStream>& streams,
                                 const Vocabulary& vocab, std::size_t n) {
  SparseMatrix matrix;
  matrix.dim = vocab.size();
  matrix.rows.reserve(streams.size());
  for (const TokenStream& stream : streams) {
    matrix.rows.push_back(count_vectorize(stream, vocab, n));
  }
  return matrix;
}

SparseVector term_frequency(const SparseVector& counts) {
  SparseVector tf;
  tf.dim = counts.dim;
  double total = counts.sum();
  if (total <= 0.0) return tf;  // empty document contributes nothing
  tf.entries.reserve(counts.entries.size());
  for (const auto& [column, weight] : counts.entries) {
    tf.entries.emplace_back(column, weight / total);
  }
  return tf;
}

std::vector<double> inverse_document_frequency(const Vocabulary& vocab,
                                               IdfVariant variant) {
  std::vector<double> idf(vocab.size());
  auto num_docs = static_cast<double>(vocab.num_docs);
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    double ratio = num_docs / static_cast<double>(vocab.doc_freq[t]);
    switch (variant) {
      case IdfVariant::log10:
        idf[t] = std::log10(ratio);
        break;
      case IdfVariant::natural:
        idf[t] = std::log(ratio);
        break;
      case IdfVariant::raw_ratio:
        idf[t] = ratio;
        break;
    }
  }
  return idf;
}

SparseMatrix tfidf_transform(const SparseMatrix& counts,
                             const Vocabulary& vocab, IdfVariant variant) {
  std::vector<double> idf = inverse_document_frequency(vocab, variant);
  SparseMatrix out;
  out.dim = counts.dim;
  out.rows.reserve(counts.rows.size());
  for (const SparseVector& row : counts.rows) {
    SparseVector tf = term_frequency(row);
    SparseVector weighted;
    weighted.dim = tf.dim;
    weighted.entries.reserve(tf.entries.size());
    for (const auto& [column, weight] : tf.entries) {
      double value = weight * idf[column];
      if (value != 0.0) weighted.entries.emplace_back(column, value);
    }
    out.rows.push_back(std::move(weighted));
  }
  return out;
}

void dump_vocabulary(const Vocabulary& vocab, const std::vector<double>& idf,
                     std::ostream& out) {
  out << "term\tcolumn\tdoc_freq\tidf\n";
  char buffer[64];
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    std::snprintf(buffer, sizeof(buffer), "%.12g", idf[t]);
    out << vocab.terms[t] << '\t' << t << '\t' << vocab.doc_freq[t] << '\t'
        << buffer << '\n';
  }
}

}  // namespace textbench
