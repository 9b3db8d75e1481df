#include "pubtrend/phrases.hpp"

#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {
namespace {

struct PairHash {
  std::size_t operator()(const TokenPair& p) const noexcept {
    const std::size_t a = std::hash<std::string>{}(p.first);
    const std::size_t b = std::hash<std::string>{}(p.second);
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

TokenSeq merge_pass(const std::map<TokenPair, double>& pairs, const TokenSeq& doc) {
  if (pairs.empty() || doc.size() < 2) return doc;
  TokenSeq out;
  out.reserve(doc.size());
  std::size_t i = 0;
  while (i < doc.size()) {
    if (i + 1 < doc.size() && pairs.contains({doc[i], doc[i + 1]})) {
      out.push_back(doc[i] + kPhraseJoiner + doc[i + 1]);
      i += 2;
    } else {
      out.push_back(doc[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

double phrase_score(double pair_count, double count_a, double count_b, double n_tokens,
                    int min_count) {
  return (pair_count - min_count) * n_tokens / (count_a * count_b);
}

std::size_t PhraseModel::pair_count() const {
  std::size_t n = 0;
  for (const auto& p : passes) n += p.size();
  return n;
}

PhraseModel fit_phrases(const std::vector<TokenSeq>& docs, int min_count, double threshold,
                        int passes, const StopwordSet& common_terms) {
  if (min_count < 1) throw ParameterError("phrase min_count must be >= 1");
  if (passes < 1) throw ParameterError("phrase passes must be >= 1");
  if (docs.empty()) throw InputError("fit_phrases needs at least one document");

  PhraseModel model;
  model.min_count = min_count;
  model.threshold = threshold;

  std::vector<TokenSeq> current = docs;
  for (int pass = 0; pass < passes; ++pass) {
    std::unordered_map<std::string, double> unigram;
    std::unordered_map<TokenPair, double, PairHash> bigram;
    double n_tokens = 0;
    for (const auto& doc : current) {
      n_tokens += static_cast<double>(doc.size());
      for (std::size_t i = 0; i < doc.size(); ++i) {
        unigram[doc[i]] += 1;
        if (i + 1 < doc.size() && !common_terms.contains(doc[i]) &&
            !common_terms.contains(doc[i + 1])) {
          bigram[{doc[i], doc[i + 1]}] += 1;
        }
      }
    }
    std::map<TokenPair, double> kept;
    for (const auto& [pair, count] : bigram) {
      if (count <= min_count) continue;
      const double score =
          phrase_score(count, unigram[pair.first], unigram[pair.second], n_tokens, min_count);
      if (score >= threshold) kept.emplace(pair, score);
    }
    for (auto& doc : current) doc = merge_pass(kept, doc);
    model.passes.push_back(std::move(kept));
  }
  return model;
}

TokenSeq apply_phrases(const PhraseModel& model, const TokenSeq& doc) {
  TokenSeq out = doc;
  for (const auto& pass : model.passes) out = merge_pass(pass, out);
  return out;
}

// Format: "min_count\t<n>", "threshold\t<x>", "passes\t<p>", then one line per
// kept pair: "<pass>\t<a>\t<b>\t<score>".
std::string PhraseModel::serialize() const {
  std::string out;
  out += fmt::format("min_count\t{}\nthreshold\t{}\npasses\t{}\n", min_count, threshold, passes.size());
  for (std::size_t p = 0; p < passes.size(); ++p) {
    for (const auto& [pair, score] : passes[p]) {
      out += fmt::format("{}\t{}\t{}\t{}\n", p + 1, pair.first, pair.second, score);
    }
  }
  return out;
}

PhraseModel PhraseModel::deserialize(std::string_view text) {
  PhraseModel model;
  std::istringstream in{std::string(text)};
  std::string key;
  std::size_t n_passes = 0;
  if (!(in >> key >> model.min_count) || key != "min_count" ||
      !(in >> key >> model.threshold) || key != "threshold" ||
      !(in >> key >> n_passes) || key != "passes") {
    throw InputError("malformed phrase model header");
  }
  model.passes.resize(n_passes);
  std::size_t pass = 0;
  std::string a, b;
  double score = 0;
  while (in >> pass >> a >> b >> score) {
    if (pass < 1 || pass > n_passes) throw InputError("phrase model pass out of range");
    model.passes[pass - 1].emplace(TokenPair{a, b}, score);
  }
  if (!in.eof()) throw InputError("malformed phrase model entry");
  return model;
}

}  // namespace pubtrend
