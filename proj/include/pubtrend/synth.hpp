#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pubtrend/corpus.hpp"
#include "pubtrend/linalg.hpp"
#include "pubtrend/random.hpp"

namespace pubtrend {

// Planted-topic corpus generator following the LDA generative process:
// topic-word distributions drawn from Dirichlet(topic_concentration) over a
// shared topic vocabulary, per-abstract topic mixtures from
// Dirichlet(doc_concentration) whose mean drifts across the year range, and
// a Zipf-distributed tail of rare topic-neutral words. Stopwords, planted
// two-word phrases, numbers, URLs and punctuation are mixed in for the
// preprocessing stages to remove or merge.
struct SynthOptions {
  std::size_t docs = 500;
  int topics = 5;
  int topic_vocabulary = 1500;
  double topic_concentration = 0.05;
  bool disjoint_topics = false;  // topic t only draws from its own block of topic_vocabulary
  double doc_concentration = 0.3;
  int tail_vocabulary = 20000;
  double tail_rate = 0.45;
  int min_words = 60;  // content words per abstract
  int max_words = 120;
  double stopword_rate = 0.35;
  int phrases_per_topic = 2;
  double phrase_rate = 0.02;
  double noise_rate = 0.02;
  double drift = 0.8;  // largest relative change in topic popularity over the years
  int year_min = 2007;
  int year_max = 2020;
  std::string venue = "SYNTH";
  std::uint64_t seed = 0;
};

struct SynthCorpus {
  Corpus corpus;
  std::vector<int> dominant_topic;        // argmax of each abstract's mixture
  std::vector<std::string> topic_vocab;   // columns of topic_word
  RowMatrixXd topic_word;                 // topics x topic_vocab
  std::vector<std::vector<std::string>> phrases;  // per topic, "first second"

  // Topic with the largest weight on a word, or -1 for words outside topic_vocab.
  int owning_topic(const std::string& word) const;

  std::vector<std::string> top_topic_words(int topic, std::size_t n) const;
  std::string truth_table() const;  // "doc_id\ttopic" rows with a header line
};

SynthCorpus generate_corpus(const SynthOptions& options);

// Marsaglia-Tsang gamma draw; shape > 0, unit scale.
double sample_gamma(Rng& rng, double shape);

std::vector<double> sample_dirichlet(Rng& rng, const std::vector<double>& alpha);

}  // namespace pubtrend
