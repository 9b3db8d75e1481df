#include "pubtrend/vocabulary.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::id(std::string_view token) const {
  const auto found = find(token);
  if (!found) throw InputError(fmt::format("token '{}' not in vocabulary", token));
  return *found;
}

TokenId Vocabulary::add(std::string token, long term_freq, long doc_freq) {
  if (token.empty()) throw InputError("empty token");
  const auto id = static_cast<TokenId>(tokens_.size());
  if (!index_.emplace(token, id).second) throw InputError(fmt::format("duplicate token '{}'", token));
  tokens_.push_back(std::move(token));
  term_freq_.push_back(term_freq);
  doc_freq_.push_back(doc_freq);
  return id;
}

std::string Vocabulary::serialize() const {
  std::string out = fmt::format("#documents\t{}\n", n_docs_);
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += fmt::format("{}\t{}\t{}\t{}\n", tokens_[i], i, term_freq_[i], doc_freq_[i]);
  }
  return out;
}

Vocabulary Vocabulary::deserialize(std::string_view text) {
  Vocabulary v;
  std::istringstream in{std::string(text)};
  std::string key;
  std::size_t n_docs = 0;
  if (!(in >> key >> n_docs) || key != "#documents") throw InputError("malformed vocabulary header");
  v.n_docs_ = n_docs;
  std::string token;
  std::size_t id = 0;
  long tf = 0, df = 0;
  while (in >> token >> id >> tf >> df) {
    if (id != v.size()) throw InputError("vocabulary ids must be contiguous from 0");
    v.add(token, tf, df);
  }
  if (!in.eof()) throw InputError("malformed vocabulary entry");
  return v;
}

VocabularyBuild build_vocabulary(std::span<const std::string> doc_ids,
                                 std::span<const std::vector<std::string>> docs,
                                 const StopwordSet& stopwords, int min_doc_freq) {
  if (doc_ids.size() != docs.size()) throw InputError("doc_ids and docs differ in length");
  if (min_doc_freq < 1) throw ParameterError("min_doc_freq must be >= 1");

  std::map<std::string, std::pair<long, long>> counts;  // token -> (tf, df)
  for (const auto& doc : docs) {
    std::unordered_set<std::string_view> seen;
    for (const auto& tok : doc) {
      if (tok.empty() || stopwords.contains(tok)) continue;
      auto& c = counts[tok];
      ++c.first;
      if (seen.insert(tok).second) ++c.second;
    }
  }

  std::vector<std::pair<std::string, std::pair<long, long>>> kept;
  for (auto& [tok, c] : counts) {
    if (c.second >= min_doc_freq) kept.emplace_back(tok, c);
  }
  if (kept.empty()) throw PipelineError("vocabulary is empty after filtering");
  // counts is ordered lexicographically, so a stable sort keeps that as the tie-break.
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second.first > b.second.first; });

  VocabularyBuild out;
  out.vocab.set_n_docs(docs.size());
  for (auto& [tok, c] : kept) out.vocab.add(tok, c.first, c.second);

  out.docs.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    TokenDoc td{doc_ids[d], {}};
    for (const auto& tok : docs[d]) {
      if (stopwords.contains(tok)) continue;
      if (const auto id = out.vocab.find(tok)) td.tokens.push_back(*id);
    }
    out.docs.push_back(std::move(td));
  }
  return out;
}

std::string serialize_token_docs(std::span<const TokenDoc> docs) {
  std::string out;
  for (const auto& d : docs) {
    out += d.doc_id;
    out.push_back('\t');
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(d.tokens[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<TokenDoc> deserialize_token_docs(std::string_view text) {
  std::vector<TokenDoc> docs;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw InputError("malformed token document line");
    TokenDoc d{std::string(line.substr(0, tab)), {}};
    std::string_view rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const auto sp = rest.find(' ');
      const auto piece = rest.substr(0, sp);
      TokenId id = 0;
      const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), id);
      if (ec != std::errc{} || ptr != piece.data() + piece.size()) {
        throw InputError("malformed token id in document " + d.doc_id);
      }
      d.tokens.push_back(id);
      if (sp == std::string_view::npos) break;
      rest.remove_prefix(sp + 1);
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace pubtrend
