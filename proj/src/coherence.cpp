#include "pubtrend/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

DocumentFrequencyIndex::DocumentFrequencyIndex(std::span<const TokenDoc> docs, std::size_t vocab_size)
    : postings_(vocab_size), n_docs_(docs.size()) {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const TokenId w : docs[d].tokens) {
      if (w < 0 || static_cast<std::size_t>(w) >= vocab_size) throw InputError("token id outside vocabulary");
      auto& list = postings_[static_cast<std::size_t>(w)];
      if (list.empty() || list.back() != static_cast<int>(d)) list.push_back(static_cast<int>(d));
    }
  }
}

long DocumentFrequencyIndex::doc_freq(TokenId w) const {
  return static_cast<long>(postings_.at(static_cast<std::size_t>(w)).size());
}

long DocumentFrequencyIndex::co_doc_freq(TokenId a, TokenId b) const {
  const auto& pa = postings_.at(static_cast<std::size_t>(a));
  const auto& pb = postings_.at(static_cast<std::size_t>(b));
  long n = 0;
  auto i = pa.begin();
  auto j = pb.begin();
  while (i != pa.end() && j != pb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double umass_topic_score(std::span<const TopicWord> words, const DocumentFrequencyIndex& index) {
  if (words.size() < 2) throw ParameterError("UMass coherence needs at least 2 top words");
  double score = 0.0;
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      const TopicWord* common = &words[a];
      const TopicWord* rare = &words[b];
      const long da = index.doc_freq(common->id);
      const long db = index.doc_freq(rare->id);
      if (db > da || (db == da && rare->token < common->token)) std::swap(common, rare);
      const long d_common = index.doc_freq(common->id);
      if (d_common == 0) {
        throw UndefinedError(fmt::format("UMass score undefined: '{}' occurs in no document", common->token));
      }
      score += std::log((static_cast<double>(index.co_doc_freq(common->id, rare->id)) + 1.0) /
                        static_cast<double>(d_common));
    }
  }
  return score;
}

CoherenceReport umass_coherence(std::span<const TopicSummary> topics, const DocumentFrequencyIndex& index) {
  CoherenceReport r;
  std::map<int, std::pair<double, int>> sums;
  for (const auto& t : topics) {
    const double s = umass_topic_score(t.top_words, index);
    r.per_topic[{t.cluster, t.topic}] = s;
    auto& acc = sums[t.cluster];
    acc.first += s;
    ++acc.second;
  }
  double total = 0.0;
  for (const auto& [cluster, acc] : sums) {
    r.per_cluster[cluster] = acc.first / acc.second;
    total += r.per_cluster[cluster];
  }
  r.overall = sums.empty() ? 0.0 : total / static_cast<double>(sums.size());
  return r;
}

std::string CoherenceReport::to_rows(const std::string& corpus, const std::string& embedding) const {
  std::string out = "corpus\tembedding\tcluster\ttopic\tcoherence\n";
  for (const auto& [key, score] : per_topic) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", corpus, embedding, key.first, key.second, score);
  }
  for (const auto& [cluster, score] : per_cluster) {
    out += fmt::format("{}\t{}\t{}\tmean\t{}\n", corpus, embedding, cluster, score);
  }
  out += fmt::format("{}\t{}\tall\tall\t{}\n", corpus, embedding, overall);
  return out;
}

}  // namespace pubtrend
