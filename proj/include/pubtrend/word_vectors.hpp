#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pubtrend/linalg.hpp"
#include "pubtrend/vocabulary.hpp"

namespace pubtrend {

// One row per vocabulary id.
struct WordVectors {
  std::vector<std::string> tokens;
  RowMatrixXd matrix;

  std::size_t size() const { return tokens.size(); }
  Eigen::Index dim() const { return matrix.cols(); }

  // First line "V d", then "token c_1 ... c_d" per word.
  std::string serialize() const;
  static WordVectors deserialize(std::string_view text);
};

template <typename Scalar>
struct DocumentEmbedding {
  Vector<Scalar> vector;
  bool empty = false;  // no in-vocabulary tokens; vector is zero
};

// Mean of the rows of `vectors` over every token occurrence (repeats counted).
// Ids outside the matrix are ignored.
template <typename Derived>
DocumentEmbedding<typename Derived::Scalar> embed_document(const Eigen::MatrixBase<Derived>& vectors,
                                                           std::span<const TokenId> tokens) {
  using Scalar = typename Derived::Scalar;
  DocumentEmbedding<Scalar> out{Vector<Scalar>::Zero(vectors.cols()), false};
  Eigen::Index used = 0;
  for (const TokenId t : tokens) {
    if (t < 0 || t >= vectors.rows()) continue;
    out.vector += vectors.row(t).transpose();
    ++used;
  }
  if (used == 0) {
    out.empty = true;
  } else {
    out.vector /= static_cast<Scalar>(used);
  }
  return out;
}

inline DocumentEmbedding<double> embed_document(const WordVectors& vectors, const TokenDoc& doc) {
  return embed_document(vectors.matrix, std::span<const TokenId>(doc.tokens));
}

// n x d matrix of document embeddings; empty documents get zero rows.
RowMatrixXd embed_documents(const WordVectors& vectors, std::span<const TokenDoc> docs);

struct Neighbor {
  TokenId id;
  double cosine;
};

// k most cosine-similar ids to `query`, query excluded, ties by ascending id.
// Zero-norm rows other than the query score 0. Throws UndefinedError when the
// query vector has zero norm and ParameterError unless k < V.
std::vector<Neighbor> nearest_neighbors(const WordVectors& vectors, TokenId query, std::size_t k);

// "# dense <d>" header then "doc_id\tv_1 ... v_d" per document.
std::string serialize_dense_vectors(std::span<const TokenDoc> docs, const RowMatrixXd& rows);

// Reads either the dense format above or the sparse triplet format written by
// serialize_sparse_vectors (with a "# sparse <T>" header). Rows follow
// `doc_ids`; documents absent from a sparse file are zero rows.
RowMatrixXd read_document_vectors(std::string_view text, std::span<const std::string> doc_ids);

}  // namespace pubtrend
