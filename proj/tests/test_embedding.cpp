#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "pubtrend/cbow.hpp"
#include "pubtrend/cooccurrence.hpp"
#include "pubtrend/errors.hpp"
#include "pubtrend/glove.hpp"
#include "pubtrend/tfidf.hpp"
#include "pubtrend/word_vectors.hpp"

using namespace pubtrend;
using namespace pubtrend::testing;

namespace {

TokenDoc doc(std::vector<TokenId> tokens) { return {"x", std::move(tokens)}; }

// Two disjoint sub-vocabularies of `per_topic` ids; each document uses one.
std::vector<TokenDoc> two_topic_docs(int n_docs, int per_topic, int length, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<TokenDoc> docs;
  for (int d = 0; d < n_docs; ++d) {
    const int topic = d % 2;
    TokenDoc td{"d" + std::to_string(d), {}};
    for (int i = 0; i < length; ++i) {
      td.tokens.push_back(topic * per_topic + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(per_topic))));
    }
    docs.push_back(std::move(td));
  }
  return docs;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(b) / (a.norm() * b.norm()); }

}  // namespace

TEST_CASE("tfidf matches a brute-force evaluation on the 20-document fixture") {
  const auto words = tfidf_fixture();
  const auto built = plain_vocabulary(words);
  const auto model = fit_tfidf(built.vocab, built.docs);
  const auto oracle = brute_force_tfidf(words);
  CHECK(model.n_docs == 20);
  for (std::size_t d = 0; d < words.size(); ++d) {
    const auto v = tfidf_vector(model, built.docs[d]);
    std::size_t nonzero_terms = 0;
    for (SparseDocVector::InnerIterator it(v); it; ++it) {
      ++nonzero_terms;
      const auto& token = built.vocab.token(static_cast<TokenId>(it.index()));
      CHECK(std::abs(it.value() - oracle[d].at(token)) <= 1e-12);
    }
    CHECK(nonzero_terms == oracle[d].size());
  }
  CHECK(model.idf[static_cast<std::size_t>(built.vocab.id("design"))] == 0.0);
  CHECK(model.idf[static_cast<std::size_t>(built.vocab.id("team"))] == doctest::Approx(std::log(20.0)).epsilon(1e-15));
}

TEST_CASE("tfidf hand values") {
  const WordDocs words = {{"cat", "sat"}, {"cat", "ran"}};
  const auto built = plain_vocabulary(words);
  const auto model = fit_tfidf(built.vocab, built.docs);
  const auto v = tfidf_vector(model, built.docs[0]);
  CHECK(v.coeff(built.vocab.id("cat")) == 0.0);
  CHECK(v.coeff(built.vocab.id("sat")) == doctest::Approx(0.4804530139182014).epsilon(1e-14));
  CHECK(model.idf[static_cast<std::size_t>(built.vocab.id("ran"))] == doctest::Approx(0.6931471805599453));

  // A term repeated k times and unique to its document scores log(1 + k) log N.
  const WordDocs rep = {{"a", "a", "a"}, {"b"}, {"b"}, {"c"}};
  const auto rb = plain_vocabulary(rep);
  const auto rm = fit_tfidf(rb.vocab, rb.docs);
  CHECK(tfidf_vector(rm, rb.docs[0]).coeff(rb.vocab.id("a")) == doctest::Approx(std::log(4.0) * std::log(4.0)));

  CHECK_THROWS_AS(tfidf_vector(model, doc({0, 7})), InputError);
  Vocabulary bad;
  bad.add("ghost", 1, 0);
  CHECK_THROWS_AS(fit_tfidf(bad, std::vector<TokenDoc>{doc({0})}), ConsistencyError);
}

TEST_CASE("tfidf model and sparse vectors round-trip through text") {
  const auto built = plain_vocabulary(tfidf_fixture());
  const auto model = fit_tfidf(built.vocab, built.docs);
  const auto back = deserialize_tfidf(serialize_tfidf(model, built.vocab));
  CHECK(back.n_docs == model.n_docs);
  CHECK(back.idf == model.idf);

  std::vector<SparseDocVector> vectors;
  for (const auto& d : built.docs) vectors.push_back(tfidf_vector(model, d));
  std::vector<std::string> ids;
  for (const auto& d : built.docs) ids.push_back(d.doc_id);
  const auto dense = read_document_vectors(serialize_sparse_vectors(built.docs, vectors, model.dims()), ids);
  CHECK(dense.isApprox(tfidf_matrix(model, built.docs), 0.0));
}

TEST_CASE("co-occurrence counts on a three-token document") {
  const std::vector<TokenDoc> docs = {doc({0, 1, 2})};
  const auto x = build_cooccurrence(docs, 3, 2);
  CHECK(x.at(0, 1) == 1.0);
  CHECK(x.at(1, 2) == 1.0);
  CHECK(x.at(0, 2) == 0.5);
  CHECK(x.at(2, 0) == 0.5);
  CHECK(x.at(0, 0) == 0.0);
  CHECK(conditional_prob(x, 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(build_cooccurrence(docs, 3, 2, WindowWeighting::uniform).at(0, 2) == 1.0);
  CHECK(build_cooccurrence(std::vector<TokenDoc>{doc({1})}, 3, 2).empty());
  CHECK_THROWS_AS(build_cooccurrence(docs, 3, 0), ParameterError);

  const auto single = build_cooccurrence(std::vector<TokenDoc>{doc({0, 1})}, 3, 1);
  CHECK(conditional_prob(single, 0, 2) == 0.0);
  CHECK_THROWS_AS(conditional_prob(single, 2, 0), UndefinedError);
}

TEST_CASE("co-occurrence symmetry, normalization and persistence") {
  const auto docs = two_topic_docs(30, 6, 15, 3);
  const auto x = build_cooccurrence(docs, 12, 4);
  for (TokenId i = 0; i < 12; ++i) {
    double sum = 0.0;
    double prob = 0.0;
    for (TokenId j = 0; j < 12; ++j) {
      CHECK(x.at(i, j) == x.at(j, i));
      CHECK(x.at(i, j) >= 0.0);
      sum += x.at(i, j);
      if (x.row_sum(i) > 0) prob += conditional_prob(x, i, j);
    }
    CHECK(sum == doctest::Approx(x.row_sum(i)).epsilon(1e-12));
    if (x.row_sum(i) > 0) CHECK(prob == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Windows stop at document boundaries: topic 0 ids never meet topic 1 ids.
  CHECK(x.at(0, 6) == 0.0);
  const auto back = CooccurrenceMatrix::deserialize(x.serialize());
  CHECK(back.vocab_size() == x.vocab_size());
  CHECK(back.upper().size() == x.upper().size());
  for (std::size_t k = 0; k < x.upper().size(); ++k) CHECK(back.upper()[k].value == x.upper()[k].value);
}

TEST_CASE("glove loss is zero at an exact fit") {
  GloveModel m = init_glove(5, 3, 11);
  Rng rng(4);
  for (Eigen::Index i = 0; i < 5; ++i) {
    m.main_bias(i) = standard_normal(rng);
    m.context_bias(i) = standard_normal(rng);
  }
  std::vector<CooccurrenceEntry> cells;
  for (TokenId i = 0; i < 5; ++i) {
    for (TokenId j = 0; j < 5; ++j) {
      const double s = m.main.row(i).dot(m.context.row(j)) + m.main_bias(i) + m.context_bias(j);
      cells.push_back({i, j, std::exp(s)});
    }
  }
  CHECK(glove_loss(m, cells) < 1e-24);
  CHECK(glove_weight(50.0, 100.0, 0.75) == doctest::Approx(std::pow(0.5, 0.75)));
  CHECK(glove_weight(150.0, 100.0, 0.75) == 1.0);
}

TEST_CASE("glove gradient matches central differences") {
  Rng rng(8);
  GloveModel m = init_glove(6, 4, 2);
  for (auto* block : {&m.main, &m.context}) {
    for (Eigen::Index i = 0; i < block->size(); ++i) block->data()[i] = 0.5 * standard_normal(rng);
  }
  for (Eigen::Index i = 0; i < 6; ++i) {
    m.main_bias(i) = 0.3 * standard_normal(rng);
    m.context_bias(i) = 0.3 * standard_normal(rng);
  }
  std::vector<CooccurrenceEntry> cells;
  for (TokenId i = 0; i < 6; ++i) {
    for (TokenId j = 0; j < 6; ++j) {
      if (uniform01(rng) < 0.7) cells.push_back({i, j, 0.5 + 30.0 * uniform01(rng)});
    }
  }
  const double x_max = 10.0;
  const auto g = glove_gradient(m, cells, x_max, 0.75);
  const auto loss = [&] { return glove_loss(m, cells, x_max, 0.75); };
  double worst = 0.0;
  auto check_block = [&](double* params, const double* analytic, Eigen::Index n) {
    for (Eigen::Index i = 0; i < n; ++i) {
      worst = std::max(worst, relative_error(analytic[i], central_difference(loss, params + i, 1e-5)));
    }
  };
  check_block(m.main.data(), g.main.data(), m.main.size());
  check_block(m.context.data(), g.context.data(), m.context.size());
  check_block(m.main_bias.data(), g.main_bias.data(), m.main_bias.size());
  check_block(m.context_bias.data(), g.context_bias.data(), m.context_bias.size());
  CHECK(worst < 1e-4);
}

TEST_CASE("glove training loss decreases on a 50-document corpus") {
  const auto docs = two_topic_docs(50, 20, 40, 9);
  const auto x = build_cooccurrence(docs, 40, 10);
  GloveOptions opt;
  opt.epochs = 15;
  opt.seed = 5;
  const auto m = train_pubg(x, opt);
  REQUIRE(m.epoch_loss.size() == 15);
  for (std::size_t e = 2; e < m.epoch_loss.size(); ++e) {
    CHECK(std::isfinite(m.epoch_loss[e]));
    CHECK(m.epoch_loss[e] < m.epoch_loss[e - 1]);
  }
  CHECK(m.epoch_loss.back() < glove_loss(init_glove(40, 100, 5), x.full_entries()));
  CHECK(m.main.allFinite());

  const auto again = train_pubg(x, opt);
  CHECK(again.word_vectors() == m.word_vectors());
  CHECK(m.word_vectors() == m.main + m.context);
}

TEST_CASE("cbow softmax loss of an all-zero model is log V") {
  CbowModel m;
  m.input = RowMatrixXd::Zero(8, 4);
  m.output = RowMatrixXd::Zero(8, 4);
  const std::vector<TokenDoc> docs = {doc({0, 1, 2, 3, 4, 5, 6, 7, 0, 1})};
  const auto examples = cbow_examples(docs, 2);
  REQUIRE(examples.size() == 10);
  CHECK(examples[0].context == std::vector<TokenId>{1, 2});
  CHECK(examples[3].context == std::vector<TokenId>{1, 2, 4, 5});
  CHECK(cbow_softmax_loss(m, examples) == doctest::Approx(std::log(8.0)).epsilon(1e-14));
}

TEST_CASE("cbow softmax gradient matches central differences") {
  Rng rng(12);
  CbowModel m;
  m.input = RowMatrixXd(8, 4);
  m.output = RowMatrixXd(8, 4);
  for (auto* block : {&m.input, &m.output}) {
    for (Eigen::Index i = 0; i < block->size(); ++i) block->data()[i] = 0.5 * standard_normal(rng);
  }
  std::vector<TokenDoc> docs = {doc({}), doc({})};
  for (int i = 0; i < 12; ++i) docs[0].tokens.push_back(static_cast<TokenId>(uniform_index(rng, 8)));
  for (int i = 0; i < 7; ++i) docs[1].tokens.push_back(static_cast<TokenId>(uniform_index(rng, 8)));
  const auto examples = cbow_examples(docs, 2);
  const auto g = cbow_softmax_gradient(m, examples);
  const auto loss = [&] { return cbow_softmax_loss(m, examples); };
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.input.size(); ++i) {
    worst = std::max(worst, relative_error(g.input.data()[i], central_difference(loss, m.input.data() + i, 1e-5)));
  }
  for (Eigen::Index i = 0; i < m.output.size(); ++i) {
    worst = std::max(worst, relative_error(g.output.data()[i], central_difference(loss, m.output.data() + i, 1e-5)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("cbow separates two disjoint topic vocabularies") {
  const auto docs = two_topic_docs(200, 10, 30, 21);
  for (const auto objective : {CbowObjective::negative_sampling, CbowObjective::full_softmax}) {
    CbowOptions opt;
    opt.dim = 16;
    opt.epochs = 10;
    opt.objective = objective;
    opt.seed = 3;
    const auto m = train_pubw(docs, 20, opt);
    double intra = 0.0, cross = 0.0;
    int n_intra = 0, n_cross = 0;
    for (int a = 0; a < 20; ++a) {
      for (int b = a + 1; b < 20; ++b) {
        const double c = cosine(m.input.row(a).transpose(), m.input.row(b).transpose());
        if (a / 10 == b / 10) {
          intra += c;
          ++n_intra;
        } else {
          cross += c;
          ++n_cross;
        }
      }
    }
    CHECK(intra / n_intra > cross / n_cross);
    for (const double l : m.epoch_loss) CHECK(std::isfinite(l));
    CHECK(m.epoch_loss.back() < m.epoch_loss.front());
    CHECK(train_pubw(docs, 20, opt).input == m.input);
  }
}

TEST_CASE("cbow input errors") {
  CHECK_THROWS_AS(train_pubw(std::vector<TokenDoc>{}, 4), InputError);
  CbowOptions opt;
  opt.window = 5;
  CHECK_THROWS_AS(train_pubw(std::vector<TokenDoc>{doc({0, 1, 2})}, 4, opt), PipelineError);
}

TEST_CASE("document embedding is the mean over token occurrences") {
  WordVectors wv;
  wv.tokens = {"u", "v", "w"};
  wv.matrix.resize(3, 2);
  wv.matrix << 1, 0, 0, 1, 3, 4;
  CHECK(embed_document(wv, doc({2})).vector == Eigen::Vector2d(3, 4));
  CHECK(embed_document(wv, doc({2, 2})).vector == Eigen::Vector2d(3, 4));
  CHECK(embed_document(wv, doc({0, 1})).vector == Eigen::Vector2d(0.5, 0.5));
  CHECK(embed_document(wv, doc({0, 2, 2})).vector.isApprox(embed_document(wv, doc({2, 0, 2})).vector, 0.0));
  const auto empty = embed_document(wv, doc({}));
  CHECK(empty.empty);
  CHECK(empty.vector.isZero(0.0));
  CHECK(embed_document(wv, doc({9, -1})).empty);

  const auto back = WordVectors::deserialize(wv.serialize());
  CHECK(back.tokens == wv.tokens);
  CHECK(back.matrix == wv.matrix);
}

TEST_CASE("nearest neighbors by cosine") {
  WordVectors wv;
  wv.tokens = {"a", "b", "c", "d", "e"};
  wv.matrix.resize(5, 2);
  wv.matrix << 1, 0, 1, 1, 0, 1, -1, 0, 2, 0.5;
  // Hand table for query a: e 2/sqrt(4.25), b 1/sqrt(2), c 0, d -1.
  const auto nn = nearest_neighbors(wv, 0, 4);
  REQUIRE(nn.size() == 4);
  CHECK(nn[0].id == 4);
  CHECK(nn[0].cosine == doctest::Approx(0.9701425001453319));
  CHECK(nn[1].id == 1);
  CHECK(nn[1].cosine == doctest::Approx(0.7071067811865476));
  CHECK(nn[2].id == 2);
  CHECK(nn[2].cosine == doctest::Approx(0.0));
  CHECK(nn[3].id == 3);
  CHECK(nn[3].cosine == doctest::Approx(-1.0));

  wv.matrix.row(3) = wv.matrix.row(2);
  wv.matrix.row(2) = wv.matrix.row(0);
  CHECK(nearest_neighbors(wv, 0, 1)[0].id == 2);
  CHECK(nearest_neighbors(wv, 0, 1)[0].cosine == doctest::Approx(1.0));

  WordVectors ortho;
  ortho.tokens = {"x", "y", "z"};
  ortho.matrix = RowMatrixXd::Zero(3, 3);
  ortho.matrix(0, 0) = ortho.matrix(1, 1) = ortho.matrix(2, 2) = 1.0;
  const auto tie = nearest_neighbors(ortho, 1, 2);
  CHECK(tie[0].id == 0);
  CHECK(tie[1].id == 2);

  ortho.matrix.row(1).setZero();
  CHECK_THROWS_AS(nearest_neighbors(ortho, 1, 1), UndefinedError);
  CHECK_THROWS_AS(nearest_neighbors(ortho, 0, 3), ParameterError);
}
