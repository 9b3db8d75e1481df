#include "pubtrend/text.hpp"

#include <cstdint>
#include <regex>

namespace pubtrend {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

// Decodes one code point at s[i]; returns its byte length (1 for invalid bytes).
std::size_t decode(std::string_view s, std::size_t i, std::uint32_t& cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  if (b0 >= 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else if (b0 >= 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if (b0 >= 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else {
    cp = b0;
    return 1;
  }
  if (i + len > s.size()) {
    cp = b0;
    return 1;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      cp = b0;
      return 1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  return len;
}

bool is_unicode_space(std::uint32_t cp) {
  return cp == 0x00A0 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

bool is_unicode_punct(std::uint32_t cp) {
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) || cp == 0x00A1 ||
         cp == 0x00A7 || cp == 0x00AB || cp == 0x00B6 || cp == 0x00B7 || cp == 0x00BB ||
         cp == 0x00BF || (cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011);
}

bool all_digits(std::string_view tok) {
  if (tok.empty()) return false;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

std::string clean_text(std::string_view raw) {
  static const std::regex hyperlink(R"((https?://|www\.)\S*)", std::regex::icase);
  const std::string no_links = std::regex_replace(std::string(raw), hyperlink, "");

  std::string no_punct;
  no_punct.reserve(no_links.size());
  for (std::size_t i = 0; i < no_links.size();) {
    std::uint32_t cp = 0;
    const std::size_t len = decode(no_links, i, cp);
    if (len == 1 && is_ascii_punct(static_cast<unsigned char>(no_links[i]))) {
      // removed
    } else if (is_unicode_space(cp)) {
      no_punct.push_back(' ');
    } else if (!is_unicode_punct(cp)) {
      no_punct.append(no_links, i, len);
    }
    i += len;
  }

  std::string out;
  out.reserve(no_punct.size());
  std::size_t i = 0;
  while (i < no_punct.size()) {
    while (i < no_punct.size() && is_space(no_punct[i])) ++i;
    std::size_t j = i;
    while (j < no_punct.size() && !is_space(no_punct[j])) ++j;
    if (j > i) {
      std::string_view tok(no_punct.data() + i, j - i);
      if (!all_digits(tok)) {
        if (!out.empty()) out.push_back(' ');
        for (char c : tok) out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
      }
    }
    i = j;
  }
  return out;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::vector<std::string> tokenize(std::string_view clean) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < clean.size()) {
    while (i < clean.size() && is_space(clean[i])) ++i;
    std::size_t j = i;
    while (j < clean.size() && !is_space(clean[j])) ++j;
    if (j > i) {
      std::string_view tok = clean.substr(i, j - i);
      if (utf8_length(tok) > 1) tokens.emplace_back(tok);
    }
    i = j;
  }
  return tokens;
}

}  // namespace pubtrend
