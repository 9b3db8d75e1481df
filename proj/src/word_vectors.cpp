#include "pubtrend/word_vectors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

std::string WordVectors::serialize() const {
  std::string out = fmt::format("{} {}\n", matrix.rows(), matrix.cols());
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    out += tokens.at(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) out += fmt::format(" {}", matrix(i, j));
    out.push_back('\n');
  }
  return out;
}

WordVectors WordVectors::deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  Eigen::Index v = 0, d = 0;
  if (!(in >> v >> d) || v < 0 || d < 1) throw InputError("malformed word vector header");
  WordVectors wv;
  wv.matrix.resize(v, d);
  wv.tokens.reserve(static_cast<std::size_t>(v));
  for (Eigen::Index i = 0; i < v; ++i) {
    std::string token;
    if (!(in >> token)) throw InputError("word vector file truncated");
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!(in >> wv.matrix(i, j))) throw InputError("word vector file truncated at '" + token + "'");
    }
    wv.tokens.push_back(std::move(token));
  }
  return wv;
}

RowMatrixXd embed_documents(const WordVectors& vectors, std::span<const TokenDoc> docs) {
  RowMatrixXd out(static_cast<Eigen::Index>(docs.size()), vectors.dim());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    out.row(static_cast<Eigen::Index>(d)) = embed_document(vectors, docs[d]).vector.transpose();
  }
  return out;
}

std::vector<Neighbor> nearest_neighbors(const WordVectors& vectors, TokenId query, std::size_t k) {
  const auto& m = vectors.matrix;
  if (query < 0 || query >= m.rows()) throw InputError("query id out of range");
  if (k >= static_cast<std::size_t>(m.rows())) throw ParameterError("k must be smaller than the vocabulary");
  const double qn = m.row(query).norm();
  if (qn == 0.0) throw UndefinedError("query vector has zero norm");
  std::vector<Neighbor> all;
  all.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i == query) continue;
    const double n = m.row(i).norm();
    const double cos = n == 0.0 ? 0.0 : m.row(i).dot(m.row(query)) / (n * qn);
    all.push_back({static_cast<TokenId>(i), cos});
  }
  const auto by_rank = [](const Neighbor& a, const Neighbor& b) {
    return a.cosine != b.cosine ? a.cosine > b.cosine : a.id < b.id;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), by_rank);
  all.resize(k);
  return all;
}

std::string serialize_dense_vectors(std::span<const TokenDoc> docs, const RowMatrixXd& rows) {
  if (static_cast<Eigen::Index>(docs.size()) != rows.rows()) throw InputError("docs and rows differ in length");
  std::string out = fmt::format("# dense {}\n", rows.cols());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    out += docs[d].doc_id;
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
      out += fmt::format("{}{}", j ? ' ' : '\t', rows(static_cast<Eigen::Index>(d), j));
    }
    out.push_back('\n');
  }
  return out;
}

RowMatrixXd read_document_vectors(std::string_view text, std::span<const std::string> doc_ids) {
  std::istringstream in{std::string(text)};
  std::string hash, kind;
  Eigen::Index dims = 0;
  if (!(in >> hash >> kind >> dims) || hash != "#" || dims < 1) {
    throw InputError("malformed document vector header");
  }
  std::unordered_map<std::string, Eigen::Index> row_of;
  for (std::size_t i = 0; i < doc_ids.size(); ++i) row_of.emplace(doc_ids[i], static_cast<Eigen::Index>(i));
  auto lookup = [&](const std::string& id) {
    const auto it = row_of.find(id);
    if (it == row_of.end()) throw ConsistencyError("document vector for unknown doc_id '" + id + "'");
    return it->second;
  };

  RowMatrixXd out = RowMatrixXd::Zero(static_cast<Eigen::Index>(doc_ids.size()), dims);
  std::string id;
  if (kind == "dense") {
    std::vector<bool> seen(doc_ids.size(), false);
    while (in >> id) {
      const Eigen::Index r = lookup(id);
      seen[static_cast<std::size_t>(r)] = true;
      for (Eigen::Index j = 0; j < dims; ++j) {
        if (!(in >> out(r, j))) throw InputError("dense document vector truncated at '" + id + "'");
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw ConsistencyError("dense document vectors are missing documents");
    }
  } else if (kind == "sparse") {
    Eigen::Index term = 0;
    double value = 0;
    while (in >> id >> term >> value) {
      if (term < 0 || term >= dims) throw InputError("sparse term id out of range");
      out(lookup(id), term) = value;
    }
    if (!in.eof()) throw InputError("malformed sparse document vector entry");
  } else {
    throw InputError("unknown document vector kind '" + kind + "'");
  }
  return out;
}

}  // namespace pubtrend
