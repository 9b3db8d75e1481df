#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pubtrend/lexicon.hpp"

namespace pubtrend {

using TokenSeq = std::vector<std::string>;
using TokenPair = std::pair<std::string, std::string>;

// Collocation model. Each pass holds the pairs that reached the threshold on
// the corpus as rewritten by the previous passes, so two passes yield
// trigrams as bigram-of-bigram merges.
struct PhraseModel {
  int min_count = 5;
  double threshold = 10.0;
  std::vector<std::map<TokenPair, double>> passes;

  std::size_t pair_count() const;
  std::string serialize() const;
  static PhraseModel deserialize(std::string_view text);
};

inline constexpr char kPhraseJoiner = '_';

// score(a, b) = (count(a, b) - min_count) * N_tokens / (count(a) * count(b)).
double phrase_score(double pair_count, double count_a, double count_b, double n_tokens,
                    int min_count);

// Pairs with a common term on either side are never phrase candidates. A pair
// is kept when its score is positive and at least the threshold.
PhraseModel fit_phrases(const std::vector<TokenSeq>& docs, int min_count = 5,
                        double threshold = 10.0, int passes = 2,
                        const StopwordSet& common_terms = {});

// Applies each pass in order as a greedy left-to-right merge; a token
// consumed by a merge cannot start another merge within the same pass.
TokenSeq apply_phrases(const PhraseModel& model, const TokenSeq& doc);

}  // namespace pubtrend
