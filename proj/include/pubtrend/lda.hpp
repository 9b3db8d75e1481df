#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pubtrend/linalg.hpp"
#include "pubtrend/random.hpp"
#include "pubtrend/vocabulary.hpp"

namespace pubtrend {

using CountMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CountVector = Eigen::Matrix<long, Eigen::Dynamic, 1>;

struct LdaOptions {
  int topics = 10;
  std::optional<double> alpha;  // defaults to 50 / topics
  double eta = 0.01;
  int iterations = 1000;
  int burn_in = 500;
  std::uint64_t seed = 0;
  int log_joint_every = 10;  // 0 disables the trace
};

// Collapsed Gibbs sampler over per-token topic assignments with symmetric
// Dirichlet priors. Exposed so callers can observe the chain sweep by sweep.
class GibbsSampler {
 public:
  GibbsSampler(std::span<const TokenDoc> docs, std::size_t vocab_size, int topics, double alpha,
               double eta, std::uint64_t seed);

  void sweep();

  int topics() const { return topics_; }
  std::size_t vocab_size() const { return vocab_size_; }
  double alpha() const { return alpha_; }
  double eta() const { return eta_; }

  const CountMatrix& topic_word() const { return n_kw_; }   // K x V
  const CountMatrix& doc_topic() const { return n_dk_; }    // D x K
  const CountVector& topic_totals() const { return n_k_; }  // K
  const std::vector<std::vector<int>>& assignments() const { return z_; }

  // Recounts every table from the assignments and checks the marginal sums.
  bool counts_consistent() const;

  // log p(w, z | alpha, eta) with theta and phi integrated out.
  double log_joint() const;

  // Posterior means from the current counts.
  RowMatrixXd phi() const;    // (n_kw + eta) / (n_k + V eta)
  RowMatrixXd theta() const;  // (n_dk + alpha) / (n_d + K alpha)

 private:
  std::vector<std::vector<TokenId>> words_;
  std::vector<std::vector<int>> z_;
  CountMatrix n_kw_;
  CountMatrix n_dk_;
  CountVector n_k_;
  std::size_t vocab_size_;
  int topics_;
  double alpha_;
  double eta_;
  Rng rng_;
  std::vector<double> weights_;
};

struct LdaModel {
  int topics = 0;
  double alpha = 0;
  double eta = 0;
  RowMatrixXd phi;    // K x V, averaged over post-burn-in sweeps
  RowMatrixXd theta;  // D x K, averaged over post-burn-in sweeps
  std::vector<std::string> doc_ids;
  std::vector<std::vector<int>> z;  // final assignments
  CountMatrix n_kw;
  CountMatrix n_dk;
  CountVector n_k;
  std::vector<double> log_joint_trace;
};

// Throws ParameterError for topics < 1 or non-positive priors and InputError
// when the documents hold no tokens.
LdaModel fit_lda(std::span<const TokenDoc> docs, std::size_t vocab_size, const LdaOptions& options = {});

struct TopicWord {
  TokenId id;
  std::string token;
  double probability;
};

struct TopicSummary {
  int cluster = 0;
  int topic = 0;
  std::vector<TopicWord> top_words;
};

// Highest-probability words of one topic, ties broken by token text.
TopicSummary top_words(const LdaModel& model, const Vocabulary& vocab, int topic, std::size_t n_top,
                       int cluster = 0);

// Rows "cluster\ttopic\trank\ttoken\tprobability" with a header line.
std::string serialize_topic_summaries(std::span<const TopicSummary> topics);
std::vector<TopicSummary> deserialize_topic_summaries(std::string_view text, const Vocabulary& vocab);

// Tables: phi has one row per topic, theta "doc_id\tp_1 .. p_K", and
// assignments "doc_id\tz_1 .. z_n".
std::string serialize_phi(const LdaModel& model);
std::string serialize_theta(const LdaModel& model);
std::string serialize_assignments(const LdaModel& model);

}  // namespace pubtrend
