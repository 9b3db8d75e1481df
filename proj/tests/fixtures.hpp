#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "pubtrend/coherence.hpp"
#include "pubtrend/corpus.hpp"
#include "pubtrend/lda.hpp"
#include "pubtrend/lexicon.hpp"
#include "pubtrend/linalg.hpp"
#include "pubtrend/random.hpp"
#include "pubtrend/synth.hpp"
#include "pubtrend/text.hpp"
#include "pubtrend/vocabulary.hpp"

namespace pubtrend::testing {

using WordDocs = std::vector<std::vector<std::string>>;

// 20 short documents over a 12-word vocabulary, with repeats, a word in every
// document and a word in exactly one.
inline WordDocs tfidf_fixture() {
  const std::vector<std::string> words = {"design", "user", "study", "interface", "model", "system",
                                          "evaluation", "virtual", "learning", "method", "data", "team"};
  Rng rng(20);
  WordDocs docs(20);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    docs[d].push_back("design");
    const std::size_t len = 2 + uniform_index(rng, 10);
    for (std::size_t i = 0; i < len; ++i) docs[d].push_back(words[1 + uniform_index(rng, words.size() - 2)]);
  }
  docs[7].push_back("team");
  docs[7].push_back("team");
  return docs;
}

inline VocabularyBuild plain_vocabulary(const WordDocs& docs) {
  std::vector<std::string> ids;
  for (std::size_t d = 0; d < docs.size(); ++d) ids.push_back("d" + std::to_string(d));
  return build_vocabulary(ids, docs, {}, 1);
}

// Direct evaluation of tf-idf from word strings: log(1 + count) * log(N / df).
inline std::vector<std::map<std::string, double>> brute_force_tfidf(const WordDocs& docs) {
  std::map<std::string, int> df;
  for (const auto& doc : docs) {
    for (const auto& w : std::set<std::string>(doc.begin(), doc.end())) ++df[w];
  }
  std::vector<std::map<std::string, double>> out;
  for (const auto& doc : docs) {
    std::map<std::string, int> count;
    for (const auto& w : doc) ++count[w];
    std::map<std::string, double> row;
    for (const auto& [w, c] : count) {
      row[w] = std::log(1.0 + c) * std::log(static_cast<double>(docs.size()) / df[w]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Central difference of f with respect to *param, restoring it afterwards.
inline double central_difference(const std::function<double()>& f, double* param, double step) {
  const double saved = *param;
  *param = saved + step;
  const double up = f();
  *param = saved - step;
  const double down = f();
  *param = saved;
  return (up - down) / (2.0 * step);
}

// |a - b| relative to the larger magnitude, floored so exact zeros compare absolutely.
inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6});
}

// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("pubtrend-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Abstracts cleaned, tokenized and stripped of bundled stopwords, numbered
// over every surviving word.
inline VocabularyBuild synth_token_docs(const SynthCorpus& sc) {
  WordDocs words;
  std::vector<std::string> ids;
  for (const auto& rec : sc.corpus.records) {
    ids.push_back(rec.id);
    words.push_back(tokenize(clean_text(rec.abstract_text)));
  }
  return build_vocabulary(ids, words, bundled_stopwords(), 1);
}

// Two planted topics over disjoint vocabularies, no shared tail or phrases.
inline SynthOptions two_topic_options(std::size_t docs, std::uint64_t seed) {
  SynthOptions o;
  o.docs = docs;
  o.topics = 2;
  o.topic_vocabulary = 400;
  o.disjoint_topics = true;
  o.tail_rate = 0.0;
  o.phrases_per_topic = 0;
  o.seed = seed;
  return o;
}

// Minimum k-means inertia over every assignment of the rows to k labels.
inline double brute_force_inertia(const RowMatrixXd& x, int k) {
  const auto n = static_cast<std::size_t>(x.rows());
  std::vector<int> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    double total = 0.0;
    for (int c = 0; c < k; ++c) {
      Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(x.cols());
      int size = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] == c) {
          sum += x.row(static_cast<Eigen::Index>(i));
          ++size;
        }
      }
      if (size == 0) continue;
      const Eigen::RowVectorXd mean = sum / size;
      for (std::size_t i = 0; i < n; ++i) {
        if (label[i] == c) total += (x.row(static_cast<Eigen::Index>(i)) - mean).squaredNorm();
      }
    }
    best = std::min(best, total);
    std::size_t pos = 0;
    while (pos < n && ++label[pos] == k) label[pos++] = 0;
    if (pos == n) break;
  }
  return best;
}

// Gaussian blobs around the given centers; rows are grouped by blob.
inline RowMatrixXd gaussian_blobs(const RowMatrixXd& centers, int per_blob, double sd, std::uint64_t seed) {
  Rng rng(seed);
  RowMatrixXd x(centers.rows() * per_blob, centers.cols());
  for (Eigen::Index b = 0; b < centers.rows(); ++b) {
    for (int i = 0; i < per_blob; ++i) {
      for (Eigen::Index j = 0; j < centers.cols(); ++j) {
        x(b * per_blob + i, j) = centers(b, j) + sd * standard_normal(rng);
      }
    }
  }
  return x;
}

// Ten documents over w0..w6. Document frequencies: w0 6, w1 5, w2 4, w3 4,
// w4 1, w5 3, w6 2. Co-document frequencies: (w0,w1) 3, (w0,w2) 2, (w0,w3) 2,
// (w1,w2) 2, (w1,w3) 1, (w2,w3) 1, (w1,w4) 0, (w5,w6) 2.
inline std::vector<TokenDoc> coherence_docs() {
  return {{"d0", {0, 1, 2}},    {"d1", {0, 1}},    {"d2", {0, 2}},       {"d3", {0, 3}}, {"d4", {0, 4}},
          {"d5", {1, 2, 5, 6}}, {"d6", {1, 5, 6}}, {"d7", {2, 3, 5}}, {"d8", {3}},    {"d9", {0, 1, 3}}};
}

inline TopicSummary topic(int cluster, int id, std::vector<int> words) {
  TopicSummary t{cluster, id, {}};
  for (const int w : words) t.top_words.push_back({w, "w" + std::to_string(w), 0.0});
  return t;
}

// Recounts n_kw, n_dk and n_k from the assignments and compares exactly.
inline bool tables_match_assignments(const GibbsSampler& s, std::span<const TokenDoc> docs) {
  CountMatrix kw = CountMatrix::Zero(s.topics(), static_cast<Eigen::Index>(s.vocab_size()));
  CountMatrix dk = CountMatrix::Zero(static_cast<Eigen::Index>(docs.size()), s.topics());
  CountVector k = CountVector::Zero(s.topics());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto& z = s.assignments()[d];
    if (z.size() != docs[d].tokens.size()) return false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      ++kw(z[i], docs[d].tokens[i]);
      ++dk(static_cast<Eigen::Index>(d), z[i]);
      ++k(z[i]);
    }
  }
  return kw == s.topic_word() && dk == s.doc_topic() && k == s.topic_totals() &&
         kw.rowwise().sum() == k;
}


inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Per-year sums of trends.tsv counts against summary.json.
inline bool trends_conserve_counts(const std::filesystem::path& dir) {
  const auto summary = DatasetSummary::from_json(read_file(dir / "summary.json"));
  std::map<int, std::size_t> totals;
  std::istringstream in(read_file(dir / "trends.tsv"));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    int year = 0;
    std::string cluster;
    std::size_t count = 0;
    row >> year >> cluster >> count;
    totals[year] += count;
  }
  for (const auto& [year, count] : summary.per_year_counts) {
    if (totals[year] != count) return false;
  }
  for (const auto& [year, count] : totals) {
    if (count != 0 && !summary.per_year_counts.contains(year)) return false;
  }
  return true;
}

}  // namespace pubtrend::testing
