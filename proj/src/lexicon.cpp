#include "pubtrend/lexicon.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "pubtrend/errors.hpp"
#include "pubtrend/resources.hpp"

namespace pubtrend {
namespace {

constexpr std::array<std::pair<std::string_view, PosTag>, 12> kTagNames{{
    {"NOUN", PosTag::noun},       {"VERB", PosTag::verb},       {"ADJ", PosTag::adjective},
    {"ADV", PosTag::adverb},      {"DET", PosTag::determiner},  {"PRON", PosTag::pronoun},
    {"ADP", PosTag::adposition},  {"CONJ", PosTag::conjunction}, {"AUX", PosTag::auxiliary},
    {"NUM", PosTag::numeral},     {"PRT", PosTag::particle},    {"X", PosTag::other},
}};

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> fields_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string f;
  while (in >> f) out.push_back(f);
  return out;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    fn(lineno, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto& [name, t] : kTagNames) {
    if (t == tag) return name;
  }
  return "X";
}

std::optional<PosTag> parse_pos_tag(std::string_view name) {
  for (const auto& [n, t] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

bool is_content_tag(PosTag tag) {
  return tag == PosTag::noun || tag == PosTag::verb || tag == PosTag::adjective ||
         tag == PosTag::adverb;
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lex;
  auto tag_of = [](std::size_t lineno, const std::string& name) {
    const auto t = parse_pos_tag(name);
    if (!t) throw ConfigError("lexicon line " + std::to_string(lineno) + ": unknown tag '" + name + "'");
    return *t;
  };
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    const auto f = fields_of(line);
    if (f.empty()) return;
    const auto bad = [&] {
      return ConfigError("lexicon line " + std::to_string(lineno) + ": malformed entry");
    };
    if (f[0] == "word") {
      if (f.size() != 3 && f.size() != 4) throw bad();
      lex.tag_map_[f[1]] = tag_of(lineno, f[2]);
      if (f.size() == 4) lex.lemma_map_[f[1]] = f[3];
    } else if (f[0] == "tag") {
      if (f.size() != 3) throw bad();
      lex.tag_rules_.push_back({f[1], tag_of(lineno, f[2])});
    } else if (f[0] == "rule") {
      if (f.size() != 4) throw bad();
      SuffixRule rule{f[1], f[2] == "-" ? std::string() : f[2], {}};
      std::string_view tags = f[3];
      while (!tags.empty()) {
        const auto comma = tags.find(',');
        rule.tags.push_back(tag_of(lineno, std::string(tags.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        tags.remove_prefix(comma + 1);
      }
      lex.suffix_rules_.push_back(std::move(rule));
    } else {
      throw bad();
    }
  });
  // Every lemma named by an entry is its own lemma.
  std::vector<std::string> lemmas;
  for (const auto& [surface, lemma] : lex.lemma_map_) lemmas.push_back(lemma);
  for (const auto& lemma : lemmas) lex.lemma_map_.try_emplace(lemma, lemma);
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& path) { return parse(read_file(path, "lexicon")); }

const Lexicon& Lexicon::bundled() {
  static const Lexicon lex = parse(resources::lexicon_text());
  return lex;
}

PosTag Lexicon::tag(std::string_view token) const {
  if (const auto it = tag_map_.find(std::string(token)); it != tag_map_.end()) return it->second;
  for (const auto& rule : tag_rules_) {
    if (token.size() > rule.suffix.size() && ends_with(token, rule.suffix)) return rule.tag;
  }
  return PosTag::noun;
}

std::string Lexicon::lemma(std::string_view token, PosTag tag) const {
  if (const auto it = lemma_map_.find(std::string(token)); it != lemma_map_.end()) return it->second;
  for (const auto& rule : suffix_rules_) {
    if (token.size() < rule.suffix.size() + kMinStem || !ends_with(token, rule.suffix)) continue;
    if (std::find(rule.tags.begin(), rule.tags.end(), tag) == rule.tags.end()) continue;
    std::string out(token.substr(0, token.size() - rule.suffix.size()));
    out += rule.replacement;
    return out;
  }
  return std::string(token);
}

std::vector<std::string> tag_and_lemmatize(const std::vector<std::string>& tokens,
                                           const Lexicon& lexicon, bool pos_filter) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    const PosTag tag = lexicon.tag(tok);
    if (pos_filter && !is_content_tag(tag)) continue;
    out.push_back(lexicon.lemma(tok, tag));
  }
  return out;
}

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet out;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    for (auto& f : fields_of(line)) out.insert(std::move(f));
  });
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(read_file(path, "stopword"));
}

const StopwordSet& bundled_stopwords() {
  static const StopwordSet set = parse_stopwords(resources::stopwords_text());
  return set;
}

}  // namespace pubtrend
