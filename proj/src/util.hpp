// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace textbench::util {

// ---- UTF-8 ----------------------------------------------------------------

inline constexpr char32_t kReplacementChar = 0xFFFD;

/// Decodes the codepoint starting at text[pos]; advances pos past it.
/// Invalid sequences yield U+FFFD and advance by one byte.
char32_t decode_utf8(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

/// Replaces invalid UTF-8 byte sequences with U+FFFD. Returns true when
/// the input needed repair.
bool sanitize_utf8(std::string& text);

bool is_unicode_space(char32_t cp);

/// Sentence punctuation stripped from token edges. Deliberately excludes
/// '<' and '>' so markup remnants stay recognizable downstream.
bool is_strip_punctuation(char32_t cp);

/// Broad punctuation/symbol class used to detect symbol-only tokens.
bool is_punctuation(char32_t cp);

// ---- strings ---------------------------------------------------------------

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_whitespace(std::string_view s);

// ---- hashing ---------------------------------------------------------------

inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline std::uint64_t fnv1a(std::string_view bytes,
                           std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char byte : bytes) {
    h ^= byte;
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a(std::uint64_t value, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xFF;
    h *= kFnvPrime;
  }
  return h;
}

/// Stable seed derivation for per-cell / per-document determinism.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::string_view> parts);

// ---- logging ---------------------------------------------------------------

/// Structured single-line log to stderr: "[textbench] event key=value ...".
void log_line(std::string_view event,
              std::initializer_list<std::pair<std::string_view, std::string>>
                  fields);

}  // namespace textbench::util
