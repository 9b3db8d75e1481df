#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pubtrend {

// Noise removal for one abstract, in this order: hyperlinks (http://,
// https://, www.), punctuation (ASCII and common Unicode marks), standalone
// numeric tokens, ASCII lowercasing, whitespace trim and collapse.
std::string clean_text(std::string_view raw);

// Whitespace split of cleaned text; tokens of a single code point are dropped.
std::vector<std::string> tokenize(std::string_view clean);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t utf8_length(std::string_view s);

}  // namespace pubtrend
