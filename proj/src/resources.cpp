// Apache License, Version 2.0, refer to LICENSE.txt
#include "textbench/preprocess.hpp"

#include "abbreviations_res.hpp"
#include "lemmas_res.hpp"
#include "stopwords_en_res.hpp"

namespace textbench {

const StopwordSet& bundled_stopwords() {
  static const StopwordSet set = parse_stopwords(resources::stopwords_en);
  return set;
}

const WordMap& bundled_abbreviations() {
  static const WordMap map = parse_word_map(resources::abbreviations);
  return map;
}

const WordMap& bundled_lemmas() {
  static const WordMap map = parse_word_map(resources::lemmas);
  return map;
}

}  // namespace textbench
