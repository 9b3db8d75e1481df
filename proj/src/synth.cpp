#include "pubtrend/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::string_view kFinalVowels = "aou";  // keeps suffix rules from firing

const std::vector<std::string> kStopwords = {"the", "of", "and", "in", "to", "for", "with", "on", "we",
                                             "this", "that", "by", "from", "as", "an", "our", "these",
                                             "which", "their", "into"};
const std::vector<std::string> kSurnames = {"Abe", "Brandt", "Costa", "Dube", "Eriksen", "Fujita", "Garcia",
                                            "Haddad", "Ivanova", "Jensen", "Kim", "Larsen", "Moreau",
                                            "Nakamura", "Okafor", "Patel", "Quinn", "Rossi", "Silva", "Tanaka"};

class Discrete {
 public:
  template <typename Weights>
  explicit Discrete(const Weights& weights) : cdf_(static_cast<std::size_t>(weights.size())) {
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf_.size(); ++i) cdf_[i] = acc += weights[static_cast<Eigen::Index>(i)];
    for (auto& c : cdf_) c /= acc;
  }
  std::size_t operator()(Rng& rng) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), uniform01(rng));
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string pseudo_word(Rng& rng) {
  const int syllables = 2 + static_cast<int>(uniform_index(rng, 2));
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w += kConsonants[uniform_index(rng, kConsonants.size())];
    const auto vowels = s + 1 == syllables ? kFinalVowels : kVowels;
    w += vowels[uniform_index(rng, vowels.size())];
  }
  return w;
}

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

}  // namespace

double sample_gamma(Rng& rng, double shape) {
  if (!(shape > 0.0)) throw ParameterError("gamma shape must be positive");
  if (shape < 1.0) {
    double u = uniform01(rng);
    while (u <= 0.0) u = uniform01(rng);
    return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> sample_dirichlet(Rng& rng, const std::vector<double>& alpha) {
  std::vector<double> g(alpha.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) sum += g[i] = sample_gamma(rng, alpha[i]);
  if (sum <= 0.0) {
    // Every draw underflowed; fall back to a point mass on a random component.
    std::fill(g.begin(), g.end(), 0.0);
    g[uniform_index(rng, g.size())] = 1.0;
    return g;
  }
  for (auto& x : g) x /= sum;
  return g;
}

SynthCorpus generate_corpus(const SynthOptions& o) {
  if (o.docs == 0 || o.topics < 1 || o.topic_vocabulary < 2 * o.topics || o.tail_vocabulary < 0 || o.min_words < 1 ||
      o.max_words < o.min_words || o.year_max < o.year_min || o.phrases_per_topic < 0 ||
      !(o.topic_concentration > 0) || !(o.doc_concentration > 0)) {
    throw ParameterError("invalid synthetic corpus options");
  }
  Rng rng(derive_seed(o.seed, "synth"));
  SynthCorpus out;
  const auto k = static_cast<std::size_t>(o.topics);

  std::unordered_set<std::string> used(kStopwords.begin(), kStopwords.end());
  auto fresh = [&] {
    for (;;) {
      std::string w = pseudo_word(rng);
      if (used.insert(w).second) return w;
    }
  };
  for (int i = 0; i < o.topic_vocabulary; ++i) out.topic_vocab.push_back(fresh());
  std::vector<std::string> tail;
  for (int i = 0; i < o.tail_vocabulary; ++i) tail.push_back(fresh());
  out.phrases.resize(k);
  for (auto& phrases : out.phrases)
    for (int i = 0; i < o.phrases_per_topic; ++i) phrases.push_back(fresh() + " " + fresh());

  out.topic_word.resize(o.topics, o.topic_vocabulary);
  std::vector<Discrete> topic_word;
  for (std::size_t t = 0; t < k; ++t) {
    auto ti = static_cast<Eigen::Index>(t);
    out.topic_word.row(ti).setZero();
    Eigen::Index lo = 0;
    Eigen::Index hi = o.topic_vocabulary;
    if (o.disjoint_topics) {
      lo = o.topic_vocabulary * ti / o.topics;
      hi = o.topic_vocabulary * (ti + 1) / o.topics;
    }
    const auto phi =
        sample_dirichlet(rng, std::vector<double>(static_cast<std::size_t>(hi - lo), o.topic_concentration));
    for (Eigen::Index w = lo; w < hi; ++w) out.topic_word(ti, w) = phi[static_cast<std::size_t>(w - lo)];
    topic_word.emplace_back(out.topic_word.row(static_cast<Eigen::Index>(t)));
  }
  std::vector<double> tail_weights(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) tail_weights[i] = 1.0 / (static_cast<double>(i) + 10.0);
  const std::optional<Discrete> tail_word =
      tail.empty() ? std::nullopt : std::optional<Discrete>(Discrete(tail_weights));

  std::vector<double> slope(k);
  for (auto& s : slope) s = o.drift * (2.0 * uniform01(rng) - 1.0);
  const int n_years = o.year_max - o.year_min + 1;

  out.corpus.venue_label = o.venue;
  for (std::size_t d = 0; d < o.docs; ++d) {
    const int year = o.year_min + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n_years)));
    const double progress = n_years > 1 ? static_cast<double>(year - o.year_min) / (n_years - 1) - 0.5 : 0.0;
    std::vector<double> alpha(k);
    double total = 0.0;
    for (std::size_t t = 0; t < k; ++t) total += alpha[t] = std::max(0.1, 1.0 + slope[t] * progress);
    for (auto& a : alpha) a *= o.doc_concentration * static_cast<double>(k) / total;
    const std::vector<double> theta = sample_dirichlet(rng, alpha);
    const Discrete topic_of(theta);
    const auto dominant = static_cast<int>(std::max_element(theta.begin(), theta.end()) - theta.begin());

    auto draw_content = [&]() -> std::string {
      if (tail_word && uniform01(rng) < o.tail_rate) return tail[(*tail_word)(rng)];
      const std::size_t t = topic_of(rng);
      if (!out.phrases[t].empty() && uniform01(rng) < o.phrase_rate) {
        return out.phrases[t][uniform_index(rng, out.phrases[t].size())];
      }
      return out.topic_vocab[topic_word[t](rng)];
    };

    const int n_words =
        o.min_words + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(o.max_words - o.min_words + 1)));
    std::string text;
    int in_sentence = 0;
    int sentence_len = 6 + static_cast<int>(uniform_index(rng, 8));
    for (int i = 0; i < n_words; ++i) {
      std::string piece;
      if (uniform01(rng) < o.stopword_rate) piece = kStopwords[uniform_index(rng, kStopwords.size())] + " ";
      piece += draw_content();
      if (uniform01(rng) < o.noise_rate) {
        switch (uniform_index(rng, 3)) {
          case 0: piece += fmt::format(" {}", 2 + uniform_index(rng, 98)); break;
          case 1: piece += fmt::format(" ({}%)", 1 + uniform_index(rng, 99)); break;
          default: piece += fmt::format(" https://example.org/{}", uniform_index(rng, 1000)); break;
        }
      }
      if (in_sentence == 0) {
        if (!text.empty()) text += ' ';
        piece = capitalize(piece);
      } else {
        text += uniform01(rng) < 0.08 ? ", " : " ";
      }
      text += piece;
      if (++in_sentence >= sentence_len || i + 1 == n_words) {
        text += '.';
        in_sentence = 0;
        sentence_len = 6 + static_cast<int>(uniform_index(rng, 8));
      }
    }

    PublicationRecord rec;
    rec.id = fmt::format("syn-{:05d}", d + 1);
    rec.venue = o.venue;
    rec.year = year;
    const auto& dominant_words = topic_word[static_cast<std::size_t>(dominant)];
    std::vector<std::string> title_words;
    for (int i = 0; i < 4; ++i) title_words.push_back(out.topic_vocab[dominant_words(rng)]);
    rec.title = capitalize(fmt::format("{}", fmt::join(title_words, " ")));
    rec.abstract_text = std::move(text);
    const std::size_t n_authors = 1 + uniform_index(rng, 4);
    for (std::size_t a = 0; a < n_authors; ++a) {
      rec.authors.push_back(fmt::format("{}. {}", static_cast<char>('A' + uniform_index(rng, 26)),
                                        kSurnames[uniform_index(rng, kSurnames.size())]));
    }
    rec.keywords = {title_words[0], title_words[1]};
    rec.doi = fmt::format("10.5555/syn.{:05d}", d + 1);
    out.corpus.records.push_back(std::move(rec));
    out.dominant_topic.push_back(dominant);
  }
  refresh_metadata(out.corpus, o.venue);
  return out;
}

std::vector<std::string> SynthCorpus::top_topic_words(int topic, std::size_t n) const {
  const auto row = topic_word.row(topic);
  std::vector<std::size_t> order(static_cast<std::size_t>(row.size()));
  std::iota(order.begin(), order.end(), 0);
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double pa = row(static_cast<Eigen::Index>(a));
                      const double pb = row(static_cast<Eigen::Index>(b));
                      return pa != pb ? pa > pb : topic_vocab[a] < topic_vocab[b];
                    });
  std::vector<std::string> words;
  for (std::size_t i = 0; i < n; ++i) words.push_back(topic_vocab[order[i]]);
  return words;
}

int SynthCorpus::owning_topic(const std::string& word) const {
  const auto it = std::find(topic_vocab.begin(), topic_vocab.end(), word);
  if (it == topic_vocab.end()) return -1;
  Eigen::Index best = 0;
  topic_word.col(it - topic_vocab.begin()).maxCoeff(&best);
  return static_cast<int>(best);
}

std::string SynthCorpus::truth_table() const {
  std::string s = "doc_id\ttopic\n";
  for (std::size_t i = 0; i < corpus.records.size(); ++i) {
    s += fmt::format("{}\t{}\n", corpus.records[i].id, dominant_topic[i]);
  }
  return s;
}

}  // namespace pubtrend
