// Apache License, Version 2.0, refer to LICENSE.txt
#include "textbench/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "textbench/error.hpp"
#include "util.hpp"

namespace textbench {

namespace {

bool all_ascii_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::string strip_edge_punctuation(std::string_view piece) {
  // decode into codepoint spans once, then trim both ends
  struct Span {
    std::size_t offset;
    std::size_t length;
    char32_t cp;
  };
  std::vector<Span> spans;
  std::size_t pos = 0;
  while (pos < piece.size()) {
    std::size_t before = pos;
    char32_t cp = util::decode_utf8(piece, pos);
    spans.push_back({before, pos - before, cp});
  }
  std::size_t begin = 0;
  std::size_t end = spans.size();
  while (begin < end && util::is_strip_punctuation(spans[begin].cp)) ++begin;
  while (end > begin && util::is_strip_punctuation(spans[end - 1].cp)) --end;
  if (begin == end) return {};
  std::size_t from = spans[begin].offset;
  std::size_t to = spans[end - 1].offset + spans[end - 1].length;
  return std::string(piece.substr(from, to - from));
}

const std::string* lookup_abbreviation(const WordMap& table,
                                       std::string_view token) {
  if (table.empty()) return nullptr;
  auto it = table.find(util::to_lower_ascii(token));
  return it == table.end() ? nullptr : &it->second;
}

/// Whitespace split with config-dependent handling of each piece:
/// abbreviation/emoticon expansion is checked before edge punctuation is
/// stripped, so pieces like ":)" survive as words.
std::vector<std::string> tokenize_with(std::string_view text,
                                       const PipelineConfig& config) {
  std::vector<std::string> tokens;
  for (std::string& piece : util::split_whitespace(text)) {
    if (config.expand_abbreviations) {
      if (const std::string* expansion =
              lookup_abbreviation(config.abbreviations, piece)) {
        for (std::string& word : util::split_whitespace(*expansion)) {
          tokens.push_back(std::move(word));
        }
        continue;
      }
    }
    if (config.strip_punctuation) {
      std::string stripped = strip_edge_punctuation(piece);
      if (!stripped.empty()) tokens.push_back(std::move(stripped));
    } else {
      tokens.push_back(std::move(piece));
    }
  }
  return tokens;
}

std::string lowercase_utf8(std::string_view s) {
  // ASCII case folding; non-ASCII codepoints pass through
  return util::to_lower_ascii(s);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  PipelineConfig config;
  config.strip_punctuation = true;
  config.expand_abbreviations = false;
  return tokenize_with(text, config);
}

std::vector<std::string> normalize(const std::vector<std::string>& tokens,
                                   const PipelineConfig& config) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    std::string current = config.lowercase ? lowercase_utf8(token) : token;
    if (current.empty()) continue;
    if (config.expand_abbreviations) {
      if (const std::string* expansion =
              lookup_abbreviation(config.abbreviations, current)) {
        for (std::string& word : util::split_whitespace(*expansion)) {
          out.push_back(std::move(word));
        }
        continue;
      }
    }
    if (config.numbers_to_words && all_ascii_digits(current)) {
      for (std::string& word : number_to_words(current)) {
        out.push_back(std::move(word));
      }
      continue;
    }
    out.push_back(std::move(current));
  }
  return out;
}

std::string lemmatize(std::string_view word, const WordMap& lemmas) {
  auto it = lemmas.find(std::string(word));
  return it == lemmas.end() ? std::string(word) : it->second;
}

std::vector<std::string> remove_stopwords(
    const std::vector<std::string>& tokens, const StopwordSet& stopwords) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (!stopwords.contains(token)) out.push_back(token);
  }
  return out;
}

namespace {

bool is_noise(const std::string& surface, const PipelineConfig& config) {
  if (surface.find('<') != std::string::npos ||
      surface.find('>') != std::string::npos) {
    return true;  // markup remnant
  }
  if (!config.numbers_to_words && all_ascii_digits(surface)) return true;
  std::size_t pos = 0;
  bool all_punct = true;
  while (pos < surface.size()) {
    if (!util::is_punctuation(util::decode_utf8(surface, pos))) {
      all_punct = false;
      break;
    }
  }
  return all_punct;
}

}  // namespace

TokenStream remove_noise(const TokenStream& stream,
                         const PipelineConfig& config) {
  TokenStream out;
  out.doc_id = stream.doc_id;
  std::size_t position = 0;
  for (const Token& token : stream.tokens) {
    if (is_noise(token.surface, config)) continue;
    out.tokens.push_back({token.surface, position++});
  }
  return out;
}

TokenStream run_pipeline(const Document& doc, const PipelineConfig& config) {
  std::vector<std::string> tokens = tokenize_with(doc.text, config);
  tokens = normalize(tokens, config);
  tokens = remove_stopwords(tokens, config.stopwords);
  switch (config.reducer) {
    case Reducer::stem:
      for (std::string& token : tokens) token = stem(token);
      break;
    case Reducer::lemmatize:
      for (std::string& token : tokens) token = lemmatize(token, config.lemmas);
      break;
    case Reducer::none:
      break;
  }
  TokenStream stream;
  stream.doc_id = doc.id;
  stream.tokens.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    stream.tokens.push_back({std::move(tokens[i]), i});
  }
  return remove_noise(stream, config);
}

std::vector<std::string> number_to_words(std::string_view digits) {
  static const char* kOnes[] = {
      "zero", "one", "two",  "three", "four", "five", "six", "seven",
      "eight", "nine", "ten", "eleven", "twelve", "thirteen", "fourteen",
      "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
  static const char* kTens[] = {"",      "",      "twenty", "thirty",
                                "forty", "fifty", "sixty",  "seventy",
                                "eighty", "ninety"};
  static const char* kScales[] = {"", "thousand", "million", "billion",
                                  "trillion"};

  std::vector<std::string> words;
  if (digits.empty()) return words;
  // digit-by-digit for unnatural forms such as "007" or very long runs
  if (digits.size() > 15 || (digits.size() > 1 && digits.front() == '0')) {
    for (char c : digits) words.emplace_back(kOnes[c - '0']);
    return words;
  }
  unsigned long long value = 0;
  for (char c : digits) value = value * 10 + static_cast<unsigned>(c - '0');
  if (value == 0) return {"zero"};

  const auto three_digits = [&](unsigned group,
                                std::vector<std::string>& out) {
    if (group >= 100) {
      out.emplace_back(kOnes[group / 100]);
      out.emplace_back("hundred");
      group %= 100;
    }
    if (group >= 20) {
      out.emplace_back(kTens[group / 10]);
      group %= 10;
      if (group > 0) out.emplace_back(kOnes[group]);
    } else if (group > 0) {
      out.emplace_back(kOnes[group]);
    }
  };

  std::vector<unsigned> groups;
  while (value > 0) {
    groups.push_back(static_cast<unsigned>(value % 1000));
    value /= 1000;
  }
  for (std::size_t i = groups.size(); i-- > 0;) {
    if (groups[i] == 0) continue;
    three_digits(groups[i], words);
    if (i > 0) words.emplace_back(kScales[i]);
  }
  return words;
}

StopwordSet parse_stopwords(std::string_view content) {
  StopwordSet set;
  for (const std::string& raw : util::split(content, '\n')) {
    std::string_view line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    set.insert(util::to_lower_ascii(line));
  }
  return set;
}

WordMap parse_word_map(std::string_view content) {
  WordMap map;
  for (const std::string& raw : util::split(content, '\n')) {
    std::string_view line = util::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) continue;
    std::string key = util::to_lower_ascii(util::trim(line.substr(0, tab)));
    std::string value(util::trim(line.substr(tab + 1)));
    if (!key.empty() && !value.empty()) map[key] = value;
  }
  return map;
}

namespace {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

StopwordSet load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(read_text_file(path));
}

WordMap load_word_map(const std::filesystem::path& path) {
  return parse_word_map(read_text_file(path));
}

PipelineConfig PipelineConfig::defaults() {
  PipelineConfig config;
  config.stopwords = bundled_stopwords();
  config.abbreviations = bundled_abbreviations();
  config.lemmas = bundled_lemmas();
  return config;
}

}  // namespace textbench
