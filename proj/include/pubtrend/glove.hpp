#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pubtrend/cooccurrence.hpp"
#include "pubtrend/linalg.hpp"

namespace pubtrend {

struct GloveOptions {
  int dim = 100;
  int epochs = 25;
  double learning_rate = 0.05;
  double x_max = 100.0;
  double alpha = 0.75;
  std::uint64_t seed = 0;
};

// Main vectors W, context vectors W~, biases b and b~, with AdaGrad
// squared-gradient accumulators for each parameter block.
struct GloveModel {
  RowMatrixXd main;
  RowMatrixXd context;
  Eigen::VectorXd main_bias;
  Eigen::VectorXd context_bias;
  RowMatrixXd main_sq;
  RowMatrixXd context_sq;
  Eigen::VectorXd main_bias_sq;
  Eigen::VectorXd context_bias_sq;
  std::vector<double> epoch_loss;  // loss over all cells after each epoch

  Eigen::Index dim() const { return main.cols(); }
  Eigen::Index vocab_size() const { return main.rows(); }
  // Final word vectors: W + W~.
  RowMatrixXd word_vectors() const { return main + context; }
};

struct GloveGradient {
  RowMatrixXd main;
  RowMatrixXd context;
  Eigen::VectorXd main_bias;
  Eigen::VectorXd context_bias;
};

// f(x) = (x / x_max)^alpha below x_max, 1 otherwise.
double glove_weight(double x, double x_max, double alpha);

// Small uniform init in [-0.5, 0.5) / dim; accumulators start at 1.
GloveModel init_glove(std::size_t vocab_size, int dim, std::uint64_t seed);

// J = sum over nonzero cells of f(X_ij) (w_i . w~_j + b_i + b~_j - ln X_ij)^2.
double glove_loss(const GloveModel& model, std::span<const CooccurrenceEntry> cells,
                  double x_max = 100.0, double alpha = 0.75);

// Exact dJ/dtheta for every parameter block.
GloveGradient glove_gradient(const GloveModel& model, std::span<const CooccurrenceEntry> cells,
                             double x_max = 100.0, double alpha = 0.75);

// AdaGrad over shuffled nonzero cells, single-threaded and deterministic for
// a fixed seed. Throws DivergenceError on a non-finite epoch loss.
GloveModel train_pubg(const CooccurrenceMatrix& x, const GloveOptions& options = {});

}  // namespace pubtrend
