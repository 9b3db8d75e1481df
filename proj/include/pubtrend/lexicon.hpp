#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pubtrend {

enum class PosTag { noun, verb, adjective, adverb, determiner, pronoun, adposition,
                    conjunction, auxiliary, numeral, particle, other };

std::string_view to_string(PosTag tag);
std::optional<PosTag> parse_pos_tag(std::string_view name);

// True for the open classes kept by the optional POS filter.
bool is_content_tag(PosTag tag);

struct SuffixRule {
  std::string suffix;
  std::string replacement;
  std::vector<PosTag> tags;  // rule applies when the token's tag is listed
};

struct TagRule {
  std::string suffix;
  PosTag tag;
};

// Most-frequent-tag lexicon plus ordered suffix rules.
//
// Text format, one entry per line, '#' starts a comment:
//   word  <surface> <TAG> [<lemma>]      tag (and optionally lemma) of a form
//   tag   <suffix> <TAG>                 tag guess for unknown forms
//   rule  <suffix> <replacement|-> <TAG>[,<TAG>...]   lemma rule
// Rules are tried in file order; the first match wins. A lemma rule only
// fires when at least kMinStem characters remain before the suffix.
class Lexicon {
 public:
  static constexpr std::size_t kMinStem = 3;

  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::filesystem::path& path);
  static const Lexicon& bundled();

  PosTag tag(std::string_view token) const;
  std::string lemma(std::string_view token, PosTag tag) const;

  const std::unordered_map<std::string, std::string>& lemma_map() const { return lemma_map_; }
  const std::unordered_map<std::string, PosTag>& tag_map() const { return tag_map_; }
  const std::vector<SuffixRule>& suffix_rules() const { return suffix_rules_; }

 private:
  std::unordered_map<std::string, std::string> lemma_map_;
  std::unordered_map<std::string, PosTag> tag_map_;
  std::vector<TagRule> tag_rules_;
  std::vector<SuffixRule> suffix_rules_;
};

// Tags each token, replaces it by its lemma and, when pos_filter is set,
// keeps only nouns, verbs, adjectives and adverbs.
std::vector<std::string> tag_and_lemmatize(const std::vector<std::string>& tokens,
                                           const Lexicon& lexicon, bool pos_filter = false);

using StopwordSet = std::unordered_set<std::string>;

// One word per line; blank lines and '#' comments ignored.
StopwordSet parse_stopwords(std::string_view text);
StopwordSet load_stopwords(const std::filesystem::path& path);
const StopwordSet& bundled_stopwords();

}  // namespace pubtrend
