#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pubtrend/vocabulary.hpp"

namespace pubtrend {

enum class WindowWeighting { inverse_distance, uniform };

struct CooccurrenceEntry {
  TokenId row;
  TokenId col;
  double value;
};

// Symmetric word-word counts. Stored upper-triangular (row <= col), sorted by
// (row, col); X[i][j] == X[j][i] is implied.
class CooccurrenceMatrix {
 public:
  CooccurrenceMatrix() = default;
  CooccurrenceMatrix(std::size_t vocab_size, std::vector<CooccurrenceEntry> upper);

  std::size_t vocab_size() const { return vocab_size_; }
  const std::vector<CooccurrenceEntry>& upper() const { return upper_; }
  double at(TokenId i, TokenId j) const;
  double row_sum(TokenId i) const { return row_sums_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& row_sums() const { return row_sums_; }
  bool empty() const { return upper_.empty(); }

  // Every nonzero cell of the full matrix, both (i, j) and (j, i) for i != j.
  std::vector<CooccurrenceEntry> full_entries() const;

  // "V\t<n>" header then "i\tj\tvalue" upper-triangular triplets.
  std::string serialize() const;
  static CooccurrenceMatrix deserialize(std::string_view text);

 private:
  std::size_t vocab_size_ = 0;
  std::vector<CooccurrenceEntry> upper_;
  std::vector<double> row_sums_;
};

// Each pair of positions at distance 1..window inside one document adds its
// weight once to the unordered cell {i, j}. Throws ParameterError if window < 1.
CooccurrenceMatrix build_cooccurrence(std::span<const TokenDoc> docs, std::size_t vocab_size,
                                      int window,
                                      WindowWeighting weighting = WindowWeighting::inverse_distance);

// P(j | i) = X[i][j] / X_i. Throws UndefinedError when X_i == 0.
double conditional_prob(const CooccurrenceMatrix& x, TokenId i, TokenId j);

}  // namespace pubtrend
