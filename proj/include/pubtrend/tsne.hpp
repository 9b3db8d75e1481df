#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pubtrend/linalg.hpp"

namespace pubtrend {

struct TsneConfig {
  double perplexity = 100.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  int iterations = 1000;
  double learning_rate = 200.0;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch = 250;
  double init_scale = 1e-4;  // standard deviation of the Gaussian initialization
  std::uint64_t seed = 0;
  double perplexity_tol = 1e-5;
  int max_search_steps = 200;
};

struct ConditionalRow {
  Eigen::VectorXd p;  // p_{j|i}; zero at the self index
  double beta = 1.0;  // 1 / (2 sigma^2)
  double perplexity = 0.0;
};

// Bisection on the Gaussian precision until exp(H(p)) is within tol of the
// target (H in nats, so this equals 2^H in bits). Throws ConvergenceError
// carrying the achieved perplexity if max_steps is exhausted, and InputError
// when fewer than two finite neighbor distances are given.
ConditionalRow perplexity_search(std::span<const double> squared_distances, std::optional<std::size_t> self,
                                 double target, double tol = 1e-5, int max_steps = 200);

RowMatrixXd squared_distance_matrix(const RowMatrixXd& x);

struct JointProbabilities {
  RowMatrixXd p;  // symmetric, zero diagonal, sums to 1
  std::vector<double> row_perplexity;
};

// p_ij = (p_{j|i} + p_{i|j}) / (2n).
JointProbabilities joint_probabilities(const RowMatrixXd& x, double perplexity, double tol = 1e-5,
                                       int max_steps = 200);

struct TsneResult {
  RowMatrix<double> coords;      // n x 2
  std::vector<double> kl_trace;  // KL(P || Q) of the map at the start of each iteration
  double perplexity = 0.0;       // after clamping
  std::vector<std::string> warnings;
};

// Exact O(n^2) t-SNE to two dimensions. Perplexity above (n - 1) / 3 is
// clamped to that value with a warning. Throws InputError for n < 5 and
// DivergenceError when the gradient stops being finite.
TsneResult fit_tsne(const RowMatrixXd& x, const TsneConfig& config = {});

// Student-t similarities q_ij of a 2-D map; sums to 1 with a zero diagonal.
RowMatrixXd student_t_q(const RowMatrixXd& y);

double kl_divergence(const RowMatrixXd& p, const RowMatrixXd& q);

// Rows "doc_id\tx\ty\tcluster\tyear" with a header line.
std::string serialize_tsne(std::span<const std::string> doc_ids, const RowMatrixXd& coords,
                           std::span<const int> clusters, std::span<const int> years);

}  // namespace pubtrend
