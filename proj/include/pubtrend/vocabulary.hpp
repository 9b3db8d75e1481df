#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pubtrend/lexicon.hpp"

namespace pubtrend {

using TokenId = int;

// Token <-> id bijection with corpus term and document frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::size_t n_docs() const { return n_docs_; }

  const std::string& token(TokenId id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::optional<TokenId> find(std::string_view token) const;
  TokenId id(std::string_view token) const;  // throws InputError when absent

  long term_freq(TokenId id) const { return term_freq_.at(static_cast<std::size_t>(id)); }
  long doc_freq(TokenId id) const { return doc_freq_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // One line per id: token, id, term_freq, doc_freq (tab separated), after a
  // "#documents\t<N>" line.
  std::string serialize() const;
  static Vocabulary deserialize(std::string_view text);

  // Appends a token; used by builders and tests. Ids are assigned in call order.
  TokenId add(std::string token, long term_freq, long doc_freq);
  void set_n_docs(std::size_t n) { n_docs_ = n; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::vector<long> term_freq_;
  std::vector<long> doc_freq_;
  std::size_t n_docs_ = 0;
};

struct TokenDoc {
  std::string doc_id;
  std::vector<TokenId> tokens;

  bool operator==(const TokenDoc&) const = default;
};

struct VocabularyBuild {
  Vocabulary vocab;
  std::vector<TokenDoc> docs;
};

// Drops stopwords and tokens seen in fewer than min_doc_freq documents, then
// numbers the survivors by descending term frequency (ties lexicographic).
// Throws PipelineError if nothing survives.
VocabularyBuild build_vocabulary(std::span<const std::string> doc_ids,
                                 std::span<const std::vector<std::string>> docs,
                                 const StopwordSet& stopwords, int min_doc_freq = 2);

// "doc_id\tid id id ..." per line.
std::string serialize_token_docs(std::span<const TokenDoc> docs);
std::vector<TokenDoc> deserialize_token_docs(std::string_view text);

}  // namespace pubtrend
