#pragma once

#include <clocale>
#include <cwctype>
#include <string>
#include <string_view>
#include <vector>

namespace legotag {

// Classification above ASCII goes through the C wide-character tables, which
// are Unicode-complete once a UTF-8 LC_CTYPE is active. ASCII behavior does
// not depend on the locale.
inline void ensure_ctype_locale() {
  static const bool once = [] {
    if (std::setlocale(LC_CTYPE, "C.UTF-8") == nullptr)
      std::setlocale(LC_CTYPE, "en_US.UTF-8");
    return true;
  }();
  (void)once;
}

// Decodes the UTF-8 sequence starting at s[i] and advances i. A byte that is
// not part of a well-formed sequence comes through as its own code point, so
// arbitrary binary survives a decode/classify pass deterministically.
inline char32_t next_code_point(std::string_view s, std::size_t& i) {
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  std::size_t len;
  char32_t cp;
  if (b0 < 0x80) {
    ++i;
    return b0;
  } else if (b0 >= 0xF0) {
    len = 4;
    cp = b0 & 0x07u;
  } else if (b0 >= 0xE0) {
    len = 3;
    cp = b0 & 0x0Fu;
  } else if (b0 >= 0xC0) {
    len = 2;
    cp = b0 & 0x1Fu;
  } else {
    ++i;  // stray continuation byte
    return b0;
  }
  if (i + len > s.size()) {
    ++i;
    return b0;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xC0u) != 0x80u) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (bk & 0x3Fu);
  }
  i += len;
  return cp;
}

inline std::vector<char32_t> code_points(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) out.push_back(next_code_point(s, i));
  return out;
}

inline void append_utf8(char32_t cp, std::string& out) {
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

inline bool is_upper_cp(char32_t cp) {
  if (cp < 0x80) return cp >= U'A' && cp <= U'Z';
  ensure_ctype_locale();
  return std::iswupper(static_cast<wint_t>(cp)) != 0;
}

inline bool is_digit_cp(char32_t cp) {
  if (cp < 0x80) return cp >= U'0' && cp <= U'9';
  ensure_ctype_locale();
  return std::iswdigit(static_cast<wint_t>(cp)) != 0;
}

inline char32_t to_lower_cp(char32_t cp) {
  if (cp < 0x80) return (cp >= U'A' && cp <= U'Z') ? cp + 32 : cp;
  ensure_ctype_locale();
  return static_cast<char32_t>(std::towlower(static_cast<wint_t>(cp)));
}

inline std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();)
    append_utf8(to_lower_cp(next_code_point(s, i)), out);
  return out;
}

inline bool contains_upper(std::string_view s) {
  for (std::size_t i = 0; i < s.size();)
    if (is_upper_cp(next_code_point(s, i))) return true;
  return false;
}

inline bool contains_digit(std::string_view s) {
  for (std::size_t i = 0; i < s.size();)
    if (is_digit_cp(next_code_point(s, i))) return true;
  return false;
}

inline bool contains_hyphen(std::string_view s) {
  return s.find('-') != std::string_view::npos;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace legotag
