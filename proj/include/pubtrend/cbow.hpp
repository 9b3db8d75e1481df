#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pubtrend/linalg.hpp"
#include "pubtrend/vocabulary.hpp"

namespace pubtrend {

enum class CbowObjective { negative_sampling, full_softmax };

struct CbowOptions {
  int dim = 100;
  int window = 5;  // n words on each side
  int epochs = 5;
  double learning_rate = 0.025;  // decays linearly to 1e-4 of this value
  int negatives = 5;
  CbowObjective objective = CbowObjective::negative_sampling;
  std::uint64_t seed = 0;
};

struct CbowModel {
  RowMatrixXd input;   // context-side vectors; these are the word embeddings
  RowMatrixXd output;  // prediction-side vectors
  int window = 5;
  int negatives = 5;
  std::vector<double> noise_cdf;   // cumulative unigram^0.75 distribution
  std::vector<double> epoch_loss;  // mean per-position loss seen during each epoch

  Eigen::Index dim() const { return input.cols(); }
  Eigen::Index vocab_size() const { return input.rows(); }
};

// One prediction: the center token and the ids of its context window.
struct CbowExample {
  TokenId target;
  std::vector<TokenId> context;
};

// Documents no longer than the window contribute nothing. Within the others,
// each position predicts from up to `window` tokens on each side, clipped at
// document edges.
std::vector<CbowExample> cbow_examples(std::span<const TokenDoc> docs, int window);

// Mean over examples of -log softmax(output * mean(input[context]))[target].
double cbow_softmax_loss(const CbowModel& model, std::span<const CbowExample> examples);

struct CbowGradient {
  RowMatrixXd input;
  RowMatrixXd output;
};

// Exact gradient of cbow_softmax_loss.
CbowGradient cbow_softmax_gradient(const CbowModel& model, std::span<const CbowExample> examples);

// Throws InputError when docs is empty and PipelineError when no document is
// longer than the window.
CbowModel train_pubw(std::span<const TokenDoc> docs, std::size_t vocab_size,
                     const CbowOptions& options = {});

}  // namespace pubtrend
