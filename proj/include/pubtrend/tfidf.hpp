#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "pubtrend/linalg.hpp"
#include "pubtrend/vocabulary.hpp"

namespace pubtrend {

// Scores s_t = log(1 + freq(t, d)) * log(N / df(t)), natural logs.
struct TfidfModel {
  std::size_t n_docs = 0;
  std::vector<double> idf;  // indexed by token id

  std::size_t dims() const { return idf.size(); }
};

using SparseDocVector = Eigen::SparseVector<double>;

// Throws ConsistencyError when an in-vocabulary token has zero doc_freq.
TfidfModel fit_tfidf(const Vocabulary& vocab, std::span<const TokenDoc> docs);

// Throws InputError for a token id outside the model's vocabulary.
SparseDocVector tfidf_vector(const TfidfModel& model, const TokenDoc& doc);

// Dense n x T matrix of document vectors, one row per document.
RowMatrixXd tfidf_matrix(const TfidfModel& model, std::span<const TokenDoc> docs);

// Vocabulary columns plus idf: token, id, term_freq, doc_freq, idf.
std::string serialize_tfidf(const TfidfModel& model, const Vocabulary& vocab);
TfidfModel deserialize_tfidf(std::string_view text);

// "# sparse <dims>" header, then triplets "doc_id\tterm_id\tscore" in
// ascending term id per document.
std::string serialize_sparse_vectors(std::span<const TokenDoc> docs,
                                     std::span<const SparseDocVector> vectors, std::size_t dims);

}  // namespace pubtrend
