// Apache License, Version 2.0, refer to LICENSE.txt
#include "textbench/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "textbench/error.hpp"
#include "util.hpp"

namespace textbench {

namespace fs = std::filesystem;

std::size_t Corpus::class_count(int label) const {
  return static_cast<std::size_t>(
      std::count_if(documents.begin(), documents.end(),
                    [label](const Document& d) { return d.label == label; }));
}

namespace {

constexpr int kNegative = 0;
constexpr int kPositive = 1;

bool read_file(const fs::path& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

bool record_missing(const RawRecord& row) {
  return util::trim(row.text).empty() || util::trim(row.label).empty();
}

/// Sorts indices by a per-document hash keyed on (seed, salt, id), so the
/// resulting order depends only on ids, never on positions.
std::vector<std::size_t> hash_order(const Corpus& corpus,
                                    const std::vector<std::size_t>& members,
                                    std::uint64_t seed,
                                    std::string_view salt) {
  struct Keyed {
    std::uint64_t hash;
    std::size_t index;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(members.size());
  for (std::size_t index : members) {
    keyed.push_back(
        {util::derive_seed(seed, {salt, corpus.documents[index].id}), index});
  }
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.hash != b.hash) return a.hash < b.hash;
    return corpus.documents[a.index].id < corpus.documents[b.index].id;
  });
  std::vector<std::size_t> order;
  order.reserve(keyed.size());
  for (const Keyed& k : keyed) order.push_back(k.index);
  return order;
}

}  // namespace

Corpus load_imdb(const fs::path& root) {
  struct Section {
    const char* split_dir;
    const char* label_dir;
    Split split;
    int label;
  };
  static constexpr Section kSections[] = {
      {"train", "pos", Split::train, kPositive},
      {"train", "neg", Split::train, kNegative},
      {"test", "pos", Split::test, kPositive},
      {"test", "neg", Split::test, kNegative},
  };

  std::vector<std::string> missing;
  for (const Section& section : kSections) {
    fs::path dir = root / section.split_dir / section.label_dir;
    if (!fs::is_directory(dir)) missing.push_back(dir.string());
  }
  if (!missing.empty()) {
    std::string message = "imdb layout missing directories:";
    for (const std::string& path : missing) message += " " + path;
    throw Error(ErrorCode::io, message);
  }

  Corpus corpus;
  corpus.name = "imdb";
  corpus.class_names = {"negative", "positive"};
  std::vector<std::pair<std::string, const Section*>> files;
  for (const Section& section : kSections) {
    fs::path dir = root / section.split_dir / section.label_dir;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      std::string rel = (fs::path(section.split_dir) / section.label_dir /
                         entry.path().filename())
                            .generic_string();
      files.emplace_back(std::move(rel), &section);
    }
  }
  std::sort(files.begin(), files.end());

  for (const auto& [rel, section] : files) {
    Document doc;
    doc.id = rel;
    if (!read_file(root / rel, doc.text)) {
      ++corpus.load_report.undecodable;
      continue;
    }
    if (util::sanitize_utf8(doc.text)) ++corpus.load_report.undecodable;
    if (util::trim(doc.text).empty()) {
      ++corpus.load_report.dropped;
      continue;
    }
    doc.label = section->label;
    doc.split = section->split;
    corpus.documents.push_back(std::move(doc));
  }
  corpus.load_report.loaded = corpus.documents.size();
  util::log_line(
      "load", {{"dataset", "imdb"},
               {"loaded", std::to_string(corpus.load_report.loaded)},
               {"dropped", std::to_string(corpus.load_report.dropped)},
               {"undecodable",
                std::to_string(corpus.load_report.undecodable)}});
  return corpus;
}

Corpus load_alexa(const fs::path& tsv_path, const AlexaOptions& options) {
  std::ifstream in(tsv_path);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + tsv_path.string());
  }
  std::string header_line;
  if (!std::getline(in, header_line)) {
    throw Error(ErrorCode::schema, "empty file: " + tsv_path.string());
  }
  if (!header_line.empty() && header_line.back() == '\r') {
    header_line.pop_back();
  }
  std::vector<std::string> headers = util::split(header_line, '\t');

  const auto column = [&](const std::string& name) {
    std::size_t found = headers.size();
    for (std::size_t i = 0; i < headers.size(); ++i) {
      if (std::string(util::trim(headers[i])) == name) {
        if (found != headers.size()) {
          throw Error(ErrorCode::schema,
                      "ambiguous column '" + name + "' in: " + header_line);
        }
        found = i;
      }
    }
    if (found == headers.size()) {
      throw Error(ErrorCode::schema, "column '" + name +
                                         "' not found; available: " +
                                         header_line);
    }
    return found;
  };
  std::size_t text_col = column(options.text_column);
  std::size_t label_col = column(options.label_column);

  std::vector<RawRecord> rows;
  std::string line;
  std::size_t undecodable = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (util::trim(line).empty()) continue;
    if (util::sanitize_utf8(line)) ++undecodable;
    std::vector<std::string> fields = util::split(line, '\t');
    RawRecord record;
    if (text_col < fields.size()) record.text = fields[text_col];
    if (label_col < fields.size()) record.label = fields[label_col];
    rows.push_back(std::move(record));
  }

  Corpus corpus;
  corpus.name = "alexa";
  corpus.class_names = {"negative", "positive"};
  corpus.load_report.undecodable = undecodable;
  corpus.load_report.dropped = drop_missing(rows).second;
  for (std::size_t row_index = 0; row_index < rows.size(); ++row_index) {
    const RawRecord& row = rows[row_index];
    if (record_missing(row)) continue;
    std::string label(util::trim(row.label));
    if (label != "0" && label != "1") {
      throw Error(ErrorCode::schema,
                  "row " + std::to_string(row_index) + ": label '" + label +
                      "' is not binary (expected 0 or 1); check " +
                      options.label_column);
    }
    Document doc;
    doc.id = std::to_string(row_index);
    doc.text = row.text;
    doc.label = (label == "1") ? kPositive : kNegative;
    doc.split = Split::unassigned;
    corpus.documents.push_back(std::move(doc));
  }
  corpus.load_report.loaded = corpus.documents.size();
  util::log_line(
      "load", {{"dataset", "alexa"},
               {"loaded", std::to_string(corpus.load_report.loaded)},
               {"dropped", std::to_string(corpus.load_report.dropped)},
               {"undecodable",
                std::to_string(corpus.load_report.undecodable)}});
  return corpus;
}

std::pair<std::vector<RawRecord>, std::size_t> drop_missing(
    const std::vector<RawRecord>& rows) {
  std::vector<RawRecord> kept;
  kept.reserve(rows.size());
  for (const RawRecord& row : rows) {
    if (!record_missing(row)) kept.push_back(row);
  }
  std::size_t dropped = rows.size() - kept.size();
  return {std::move(kept), dropped};
}

Corpus split_corpus(Corpus corpus, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::contract, "test_fraction must be in (0,1)");
  }
  std::size_t num_classes = corpus.class_names.size();
  std::vector<std::vector<std::size_t>> by_class(num_classes);
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    int label = corpus.documents[i].label;
    by_class.at(static_cast<std::size_t>(label)).push_back(i);
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (by_class[c].size() < 2) {
      throw Error(ErrorCode::contract,
                  "class '" + corpus.class_names[c] +
                      "' has fewer than 2 documents; cannot split");
    }
  }

  for (std::size_t c = 0; c < num_classes; ++c) {
    auto test_count = static_cast<std::size_t>(std::lround(
        static_cast<double>(by_class[c].size()) * test_fraction));
    std::vector<std::size_t> order =
        hash_order(corpus, by_class[c], seed, "split");
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      corpus.documents[order[rank]].split =
          rank < test_count ? Split::test : Split::train;
    }
  }
  return corpus;
}

Corpus stratified_subsample(const Corpus& corpus, std::size_t target,
                            std::uint64_t seed) {
  if (target == 0 || target >= corpus.documents.size()) return corpus;
  double fraction = static_cast<double>(target) /
                    static_cast<double>(corpus.documents.size());

  // cell key: (split, label) so both the class balance and the train/test
  // proportions survive subsampling
  std::map<std::pair<int, int>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const Document& doc = corpus.documents[i];
    cells[{static_cast<int>(doc.split), doc.label}].push_back(i);
  }

  std::vector<bool> keep(corpus.documents.size(), false);
  for (auto& [key, members] : cells) {
    auto cell_target = static_cast<std::size_t>(std::lround(
        static_cast<double>(members.size()) * fraction));
    cell_target = std::min(cell_target, members.size());
    std::vector<std::size_t> order =
        hash_order(corpus, members, seed, "subsample");
    for (std::size_t rank = 0; rank < cell_target; ++rank) {
      keep[order[rank]] = true;
    }
  }

  Corpus out;
  out.name = corpus.name;
  out.class_names = corpus.class_names;
  out.load_report = corpus.load_report;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    if (keep[i]) out.documents.push_back(corpus.documents[i]);
  }
  return out;
}

}  // namespace textbench
