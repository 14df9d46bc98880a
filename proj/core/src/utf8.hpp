#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kre::utf8 {

struct Decoded {
  char32_t cp;
  std::size_t length;  // bytes consumed, >= 1
};

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one code point at `pos`. Invalid or truncated sequences yield
/// U+FFFD and consume a single byte.
Decoded decode(std::string_view s, std::size_t pos) noexcept;

void append(std::string& out, char32_t cp);

std::vector<char32_t> code_points(std::string_view s);

/// Simple (one-to-one) case folding for Latin, Greek, Cyrillic, Armenian and
/// fullwidth Latin letters. Everything else maps to itself.
char32_t fold(char32_t cp) noexcept;
std::string fold(std::string_view s);

bool is_space(char32_t cp) noexcept;
bool is_digit(char32_t cp) noexcept;
/// ASCII letters, plus any non-ASCII code point outside the punctuation,
/// symbol, emoji and control blocks.
bool is_letter(char32_t cp) noexcept;
bool is_apostrophe(char32_t cp) noexcept;

}  // namespace kre::utf8
