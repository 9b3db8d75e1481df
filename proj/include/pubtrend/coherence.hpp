#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pubtrend/lda.hpp"
#include "pubtrend/vocabulary.hpp"

namespace pubtrend {

// Sorted posting lists over a document collection, for D(w) and D(w_i, w_j).
class DocumentFrequencyIndex {
 public:
  DocumentFrequencyIndex(std::span<const TokenDoc> docs, std::size_t vocab_size);

  long doc_freq(TokenId w) const;
  long co_doc_freq(TokenId a, TokenId b) const;
  std::size_t n_docs() const { return n_docs_; }

 private:
  std::vector<std::vector<int>> postings_;
  std::size_t n_docs_ = 0;
};

struct CoherenceReport {
  std::map<std::pair<int, int>, double> per_topic;  // (cluster, topic) -> score
  std::map<int, double> per_cluster;                // mean over that cluster's topics
  double overall = 0.0;                             // mean over clusters

  // Rows "corpus\tembedding\tcluster\ttopic\tcoherence"; per-cluster means use
  // topic "mean" and the overall score uses cluster and topic "all".
  std::string to_rows(const std::string& corpus, const std::string& embedding) const;
};

// Sum over each unordered pair of top words of log((D(w_i, w_j) + 1) / D(w_i)),
// where w_i is the word with the larger D (ties: lexicographically smaller).
// Throws ParameterError for fewer than 2 words and UndefinedError if D(w_i) = 0.
double umass_topic_score(std::span<const TopicWord> words, const DocumentFrequencyIndex& index);

CoherenceReport umass_coherence(std::span<const TopicSummary> topics, const DocumentFrequencyIndex& index);

}  // namespace pubtrend
