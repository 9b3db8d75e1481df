#include "pubtrend/tfidf.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

TfidfModel fit_tfidf(const Vocabulary& vocab, std::span<const TokenDoc> docs) {
  TfidfModel model;
  model.n_docs = docs.size();
  model.idf.resize(vocab.size());
  const double n = static_cast<double>(docs.size());
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    const long df = vocab.doc_freq(static_cast<TokenId>(t));
    if (df <= 0) {
      throw ConsistencyError(fmt::format("token '{}' has doc_freq {}", vocab.token(static_cast<TokenId>(t)), df));
    }
    if (static_cast<double>(df) > n) {
      throw ConsistencyError(fmt::format("token '{}' has doc_freq {} > {} documents",
                                         vocab.token(static_cast<TokenId>(t)), df, docs.size()));
    }
    model.idf[t] = std::log(n / static_cast<double>(df));
  }
  return model;
}

SparseDocVector tfidf_vector(const TfidfModel& model, const TokenDoc& doc) {
  std::map<TokenId, int> freq;
  for (const TokenId t : doc.tokens) {
    if (t < 0 || static_cast<std::size_t>(t) >= model.dims()) {
      throw InputError(fmt::format("document '{}' has token id {} outside vocabulary of {}",
                                   doc.doc_id, t, model.dims()));
    }
    ++freq[t];
  }
  SparseDocVector v(static_cast<Eigen::Index>(model.dims()));
  v.reserve(static_cast<Eigen::Index>(freq.size()));
  for (const auto& [t, f] : freq) {
    v.insertBack(t) = std::log1p(static_cast<double>(f)) * model.idf[static_cast<std::size_t>(t)];
  }
  return v;
}

RowMatrixXd tfidf_matrix(const TfidfModel& model, std::span<const TokenDoc> docs) {
  RowMatrixXd m = RowMatrixXd::Zero(static_cast<Eigen::Index>(docs.size()),
                                    static_cast<Eigen::Index>(model.dims()));
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto v = tfidf_vector(model, docs[d]);
    for (SparseDocVector::InnerIterator it(v); it; ++it) m(static_cast<Eigen::Index>(d), it.index()) = it.value();
  }
  return m;
}

std::string serialize_tfidf(const TfidfModel& model, const Vocabulary& vocab) {
  std::string out = fmt::format("#documents\t{}\n", model.n_docs);
  for (std::size_t t = 0; t < model.dims(); ++t) {
    const auto id = static_cast<TokenId>(t);
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", vocab.token(id), t, vocab.term_freq(id),
                       vocab.doc_freq(id), model.idf[t]);
  }
  return out;
}

TfidfModel deserialize_tfidf(std::string_view text) {
  TfidfModel model;
  std::istringstream in{std::string(text)};
  std::string key, token;
  if (!(in >> key >> model.n_docs) || key != "#documents") throw InputError("malformed tfidf header");
  std::size_t id = 0;
  long tf = 0, df = 0;
  double idf = 0;
  while (in >> token >> id >> tf >> df >> idf) {
    if (id != model.idf.size()) throw InputError("tfidf ids must be contiguous from 0");
    model.idf.push_back(idf);
  }
  if (!in.eof()) throw InputError("malformed tfidf entry");
  return model;
}

std::string serialize_sparse_vectors(std::span<const TokenDoc> docs,
                                     std::span<const SparseDocVector> vectors, std::size_t dims) {
  if (docs.size() != vectors.size()) throw InputError("docs and vectors differ in length");
  std::string out = fmt::format("# sparse {}\n", dims);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (SparseDocVector::InnerIterator it(vectors[d]); it; ++it) {
      out += fmt::format("{}\t{}\t{}\n", docs[d].doc_id, it.index(), it.value());
    }
  }
  return out;
}

}  // namespace pubtrend
