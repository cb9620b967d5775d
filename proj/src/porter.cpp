// Apache License, Version 2.0, refer to LICENSE.txt
//
// Porter suffix-stripping, following the reference implementation of the
// revised ("official") algorithm: rules 2->2 use bli->ble and logi->log,
// and words of length 1 or 2 are left alone. Validated against the
// published reference vocabulary in tests/data/porter_vectors.tsv.
#include <string>
#include <string_view>

#include "textbench/preprocess.hpp"

namespace textbench {

namespace {

class PorterState {
 public:
  explicit PorterState(std::string_view word) : b_(word), k_(word.size() - 1) {}

  std::string result() const { return b_.substr(0, k_ + 1); }

  bool is_consonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !is_consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int measure() const {
    int n = 0;
    std::size_t i = 0;
    if (j_ == kNone) return 0;
    while (true) {
      if (i > j_) return n;
      if (!is_consonant(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (is_consonant(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!is_consonant(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    if (j_ == kNone) return false;
    for (std::size_t i = 0; i <= j_; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t i) const {
    if (i < 1) return false;
    if (b_[i] != b_[i - 1]) return false;
    return is_consonant(i);
  }

  // consonant-vowel-consonant ending at i, final consonant not w, x or y;
  // gates restoring a trailing 'e' (hop -> hopping, but not snow -> snowing)
  bool cvc(std::size_t i) const {
    if (i < 2) return false;
    if (!is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2)) {
      return false;
    }
    char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view suffix) {
    std::size_t len = suffix.size();
    if (len > k_ + 1) return false;
    if (b_.compare(k_ + 1 - len, len, suffix) != 0) return false;
    j_ = (k_ + 1 - len == 0) ? kNone : k_ - len;
    return true;
  }

  void set_to(std::string_view replacement) {
    b_.replace(j_ == kNone ? 0 : j_ + 1, std::string::npos, replacement);
    k_ = (j_ == kNone ? 0 : j_ + 1) + replacement.size() - 1;
  }

  void replace_if_m(std::string_view replacement) {
    if (measure() > 0) set_to(replacement);
  }

  char last() const { return b_[k_]; }
  char at(std::size_t i) const { return b_[i]; }
  std::size_t last_index() const { return k_; }

  void chop(std::size_t count = 1) { k_ -= count; }
  void set_last(char c) { b_[k_] = c; }
  void truncate_to_stem() { k_ = (j_ == kNone) ? 0 : j_; }
  bool stem_nonempty() const { return j_ != kNone; }
  std::size_t stem_end() const { return j_; }
  void set_j_to_k() { j_ = k_; }
  void set_j(std::size_t j) { j_ = j; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::string b_;
  std::size_t k_;       // index of the last live character
  std::size_t j_ = 0;   // end of the stem set by ends(); kNone = empty stem
};

// plurals and -ed / -ing
void step1ab(PorterState& s) {
  if (s.last() == 's') {
    if (s.ends("sses")) {
      s.chop(2);
    } else if (s.ends("ies")) {
      s.set_to("i");
    } else if (s.at(s.last_index() - 1) != 's') {
      s.chop();
    }
  }
  if (s.ends("eed")) {
    if (s.measure() > 0) s.chop();
  } else if ((s.ends("ed") || s.ends("ing")) && s.vowel_in_stem()) {
    s.truncate_to_stem();
    if (s.ends("at")) {
      s.set_to("ate");
    } else if (s.ends("bl")) {
      s.set_to("ble");
    } else if (s.ends("iz")) {
      s.set_to("ize");
    } else if (s.double_consonant(s.last_index())) {
      char c = s.last();
      if (c != 'l' && c != 's' && c != 'z') s.chop();
    } else {
      s.set_j_to_k();
      if (s.measure() == 1 && s.cvc(s.last_index())) s.set_to("e");
    }
  }
}

// y -> i when the stem has a vowel
void step1c(PorterState& s) {
  if (s.ends("y") && s.vowel_in_stem()) s.set_last('i');
}

void step2(PorterState& s) {
  if (s.last_index() < 1) return;
  switch (s.at(s.last_index() - 1)) {
    case 'a':
      if (s.ends("ational")) return s.replace_if_m("ate");
      if (s.ends("tional")) return s.replace_if_m("tion");
      break;
    case 'c':
      if (s.ends("enci")) return s.replace_if_m("ence");
      if (s.ends("anci")) return s.replace_if_m("ance");
      break;
    case 'e':
      if (s.ends("izer")) return s.replace_if_m("ize");
      break;
    case 'l':
      if (s.ends("bli")) return s.replace_if_m("ble");
      if (s.ends("alli")) return s.replace_if_m("al");
      if (s.ends("entli")) return s.replace_if_m("ent");
      if (s.ends("eli")) return s.replace_if_m("e");
      if (s.ends("ousli")) return s.replace_if_m("ous");
      break;
    case 'o':
      if (s.ends("ization")) return s.replace_if_m("ize");
      if (s.ends("ation")) return s.replace_if_m("ate");
      if (s.ends("ator")) return s.replace_if_m("ate");
      break;
    case 's':
      if (s.ends("alism")) return s.replace_if_m("al");
      if (s.ends("iveness")) return s.replace_if_m("ive");
      if (s.ends("fulness")) return s.replace_if_m("ful");
      if (s.ends("ousness")) return s.replace_if_m("ous");
      break;
    case 't':
      if (s.ends("aliti")) return s.replace_if_m("al");
      if (s.ends("iviti")) return s.replace_if_m("ive");
      if (s.ends("biliti")) return s.replace_if_m("ble");
      break;
    case 'g':
      if (s.ends("logi")) return s.replace_if_m("log");
      break;
  }
}

void step3(PorterState& s) {
  switch (s.last()) {
    case 'e':
      if (s.ends("icate")) return s.replace_if_m("ic");
      if (s.ends("ative")) return s.replace_if_m("");
      if (s.ends("alize")) return s.replace_if_m("al");
      break;
    case 'i':
      if (s.ends("iciti")) return s.replace_if_m("ic");
      break;
    case 'l':
      if (s.ends("ical")) return s.replace_if_m("ic");
      if (s.ends("ful")) return s.replace_if_m("");
      break;
    case 's':
      if (s.ends("ness")) return s.replace_if_m("");
      break;
  }
}

void step4(PorterState& s) {
  if (s.last_index() < 1) return;
  switch (s.at(s.last_index() - 1)) {
    case 'a':
      if (s.ends("al")) break;
      return;
    case 'c':
      if (s.ends("ance")) break;
      if (s.ends("ence")) break;
      return;
    case 'e':
      if (s.ends("er")) break;
      return;
    case 'i':
      if (s.ends("ic")) break;
      return;
    case 'l':
      if (s.ends("able")) break;
      if (s.ends("ible")) break;
      return;
    case 'n':
      if (s.ends("ant")) break;
      if (s.ends("ement")) break;
      if (s.ends("ment")) break;
      if (s.ends("ent")) break;
      return;
    case 'o':
      if (s.ends("ion") && s.stem_nonempty() &&
          (s.at(s.stem_end()) == 's' || s.at(s.stem_end()) == 't')) {
        break;
      }
      if (s.ends("ou")) break;  // as in -ous
      return;
    case 's':
      if (s.ends("ism")) break;
      return;
    case 't':
      if (s.ends("ate")) break;
      if (s.ends("iti")) break;
      return;
    case 'u':
      if (s.ends("ous")) break;
      return;
    case 'v':
      if (s.ends("ive")) break;
      return;
    case 'z':
      if (s.ends("ize")) break;
      return;
    default:
      return;
  }
  if (s.measure() > 1) s.truncate_to_stem();
}

// final -e and -ll cleanup
void step5(PorterState& s) {
  s.set_j_to_k();
  if (s.last() == 'e') {
    int m = s.measure();
    if (m > 1) {
      s.chop();
    } else if (m == 1 && !s.cvc(s.last_index() - 1)) {
      s.chop();
    }
  }
  if (s.last() == 'l' && s.double_consonant(s.last_index())) {
    s.set_j_to_k();
    if (s.measure() > 1) s.chop();
  }
}

}  // namespace

std::string stem(std::string_view word) {
  if (word.size() < 3) return std::string(word);
  PorterState state(word);
  step1ab(state);
  step1c(state);
  step2(state);
  step3(state);
  step4(state);
  step5(state);
  return state.result();
}

}  // namespace textbench
