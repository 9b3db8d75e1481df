#pragma once

#include <string_view>

namespace pubtrend::resources {

// Contents of data/lexicon.txt and data/stopwords.txt at build time.
std::string_view lexicon_text();
std::string_view stopwords_text();

}  // namespace pubtrend::resources
