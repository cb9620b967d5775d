// Apache License, Version 2.0, refer to LICENSE.txt
#include "util.hpp"

#include <cctype>
#include <cstdio>
#include <utility>

namespace textbench::util {

char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacementChar;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kReplacementChar;
  }
  for (int i = 1; i < len; ++i) {
    unsigned char bi = byte(pos + i);
    if ((bi & 0xC0) != 0x80) {
      ++pos;
      return kReplacementChar;
    }
    cp = (cp << 6) | (bi & 0x3F);
  }
  // overlong encodings, surrogates and out-of-range values are invalid
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kReplacementChar;
  }
  pos += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool sanitize_utf8(std::string& text) {
  std::size_t pos = 0;
  bool valid = true;
  while (pos < text.size()) {
    std::size_t before = pos;
    char32_t cp = decode_utf8(text, pos);
    if (cp == kReplacementChar &&
        !(pos - before == 3 && text.compare(before, 3, "\xEF\xBF\xBD") == 0)) {
      valid = false;
      break;
    }
  }
  if (valid) return false;
  std::string out;
  out.reserve(text.size());
  pos = 0;
  while (pos < text.size()) append_utf8(out, decode_utf8(text, pos));
  text = std::move(out);
  return true;
}

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case 0x0085:  // next line
    case 0x00A0:  // no-break space
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

namespace {

bool is_unicode_quote_or_dash(char32_t cp) {
  switch (cp) {
    case 0x2018:  // ' '
    case 0x2019:
    case 0x201A:
    case 0x201C:  // " "
    case 0x201D:
    case 0x201E:
    case 0x2013:  // – —
    case 0x2014:
    case 0x2015:
    case 0x2026:  // …
    case 0x00AB:  // « »
    case 0x00BB:
    case 0x2039:
    case 0x203A:
    case 0x00A1:  // ¡ ¿
    case 0x00BF:
    case 0x00B7:  // ·
    case 0x2022:  // •
    case 0x2032:  // ′ ″
    case 0x2033:
      return true;
    default:
      return false;
  }
}

}  // namespace

bool is_strip_punctuation(char32_t cp) {
  if (cp == U'<' || cp == U'>') return false;
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  return is_unicode_quote_or_dash(cp);
}

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  return is_unicode_quote_or_dash(cp);
}

std::string_view trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> parts;
  std::string current;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t before = pos;
    char32_t cp = decode_utf8(s, pos);
    if (is_unicode_space(cp)) {
      if (!current.empty()) {
        parts.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.append(s.substr(before, pos - before));
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::string_view> parts) {
  std::uint64_t h = fnv1a(seed, kFnvOffset);
  for (std::string_view part : parts) {
    h = fnv1a(part, h);
    h = fnv1a(std::uint64_t{0x9E3779B97F4A7C15ULL}, h);
  }
  return h;
}

void log_line(std::string_view event,
              std::initializer_list<std::pair<std::string_view, std::string>>
                  fields) {
  std::string line = "[textbench] ";
  line.append(event);
  for (const auto& [key, value] : fields) {
    line.push_back(' ');
    line.append(key);
    line.push_back('=');
    line.append(value);
  }
  line.push_back('\n');
  std::fputs(line.c_str(), stderr);
}

}  // namespace textbench::util
