#include "pubtrend/lda.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"

namespace pubtrend {

GibbsSampler::GibbsSampler(std::span<const TokenDoc> docs, std::size_t vocab_size, int topics,
                           double alpha, double eta, std::uint64_t seed)
    : vocab_size_(vocab_size), topics_(topics), alpha_(alpha), eta_(eta), rng_(seed) {
  if (topics < 1) throw ParameterError("LDA needs at least one topic");
  if (!(alpha > 0.0) || !(eta > 0.0)) throw ParameterError("LDA priors must be positive");
  if (vocab_size == 0) throw InputError("LDA needs a non-empty vocabulary");

  const auto d_count = static_cast<Eigen::Index>(docs.size());
  n_kw_ = CountMatrix::Zero(topics, static_cast<Eigen::Index>(vocab_size));
  n_dk_ = CountMatrix::Zero(d_count, topics);
  n_k_ = CountVector::Zero(topics);
  weights_.resize(static_cast<std::size_t>(topics));
  words_.reserve(docs.size());
  z_.reserve(docs.size());
  for (Eigen::Index d = 0; d < d_count; ++d) {
    const auto& doc = docs[static_cast<std::size_t>(d)];
    std::vector<int> zd;
    zd.reserve(doc.tokens.size());
    for (const TokenId w : doc.tokens) {
      if (w < 0 || static_cast<std::size_t>(w) >= vocab_size) {
        throw InputError(fmt::format("document '{}' has token id {} outside vocabulary", doc.doc_id, w));
      }
      const int k = static_cast<int>(uniform_index(rng_, static_cast<std::size_t>(topics)));
      zd.push_back(k);
      ++n_kw_(k, w);
      ++n_dk_(d, k);
      ++n_k_(k);
    }
    words_.push_back(doc.tokens);
    z_.push_back(std::move(zd));
  }
}

void GibbsSampler::sweep() {
  const double v_eta = static_cast<double>(vocab_size_) * eta_;
  for (std::size_t d = 0; d < words_.size(); ++d) {
    const auto di = static_cast<Eigen::Index>(d);
    auto& zd = z_[d];
    const auto& wd = words_[d];
    for (std::size_t i = 0; i < wd.size(); ++i) {
      const TokenId w = wd[i];
      int k = zd[i];
      --n_kw_(k, w);
      --n_dk_(di, k);
      --n_k_(k);
      double total = 0.0;
      for (int t = 0; t < topics_; ++t) {
        total += (static_cast<double>(n_dk_(di, t)) + alpha_) *
                 (static_cast<double>(n_kw_(t, w)) + eta_) / (static_cast<double>(n_k_(t)) + v_eta);
        weights_[static_cast<std::size_t>(t)] = total;
      }
      const double r = uniform01(rng_) * total;
      k = 0;
      while (k < topics_ - 1 && weights_[static_cast<std::size_t>(k)] <= r) ++k;
      zd[i] = k;
      ++n_kw_(k, w);
      ++n_dk_(di, k);
      ++n_k_(k);
    }
  }
}

bool GibbsSampler::counts_consistent() const {
  CountMatrix kw = CountMatrix::Zero(n_kw_.rows(), n_kw_.cols());
  CountMatrix dk = CountMatrix::Zero(n_dk_.rows(), n_dk_.cols());
  for (std::size_t d = 0; d < words_.size(); ++d) {
    for (std::size_t i = 0; i < words_[d].size(); ++i) {
      const int k = z_[d][i];
      if (k < 0 || k >= topics_) return false;
      ++kw(k, words_[d][i]);
      ++dk(static_cast<Eigen::Index>(d), k);
    }
  }
  if (kw != n_kw_ || dk != n_dk_) return false;
  if (n_kw_.rowwise().sum() != n_k_) return false;
  for (std::size_t d = 0; d < words_.size(); ++d) {
    if (n_dk_.row(static_cast<Eigen::Index>(d)).sum() != static_cast<long>(words_[d].size())) return false;
  }
  return (n_kw_.array() >= 0).all() && (n_dk_.array() >= 0).all();
}

double GibbsSampler::log_joint() const {
  const double v = static_cast<double>(vocab_size_);
  const double k = static_cast<double>(topics_);
  double lp = topics_ * (std::lgamma(v * eta_) - v * std::lgamma(eta_));
  for (Eigen::Index t = 0; t < n_kw_.rows(); ++t) {
    for (Eigen::Index w = 0; w < n_kw_.cols(); ++w) lp += std::lgamma(static_cast<double>(n_kw_(t, w)) + eta_);
    lp -= std::lgamma(static_cast<double>(n_k_(t)) + v * eta_);
  }
  lp += static_cast<double>(words_.size()) * (std::lgamma(k * alpha_) - k * std::lgamma(alpha_));
  for (Eigen::Index d = 0; d < n_dk_.rows(); ++d) {
    for (Eigen::Index t = 0; t < n_dk_.cols(); ++t) lp += std::lgamma(static_cast<double>(n_dk_(d, t)) + alpha_);
    lp -= std::lgamma(static_cast<double>(words_[static_cast<std::size_t>(d)].size()) + k * alpha_);
  }
  return lp;
}

RowMatrixXd GibbsSampler::phi() const {
  RowMatrixXd p = n_kw_.cast<double>().array() + eta_;
  for (Eigen::Index t = 0; t < p.rows(); ++t) p.row(t) /= p.row(t).sum();
  return p;
}

RowMatrixXd GibbsSampler::theta() const {
  RowMatrixXd p = n_dk_.cast<double>().array() + alpha_;
  for (Eigen::Index d = 0; d < p.rows(); ++d) p.row(d) /= p.row(d).sum();
  return p;
}

LdaModel fit_lda(std::span<const TokenDoc> docs, std::size_t vocab_size, const LdaOptions& opt) {
  if (opt.topics < 1) throw ParameterError("LDA needs at least one topic");
  if (opt.iterations < 0 || opt.burn_in < 0) throw ParameterError("LDA sweep counts must be >= 0");
  if (docs.empty()) throw InputError("LDA needs at least one document");
  const bool any_tokens = std::any_of(docs.begin(), docs.end(), [](const auto& d) { return !d.tokens.empty(); });
  if (!any_tokens) throw InputError("LDA documents contain no tokens");

  const double alpha = opt.alpha.value_or(50.0 / opt.topics);
  GibbsSampler sampler(docs, vocab_size, opt.topics, alpha, opt.eta, opt.seed);

  LdaModel m;
  m.topics = opt.topics;
  m.alpha = alpha;
  m.eta = opt.eta;
  m.phi = RowMatrixXd::Zero(opt.topics, static_cast<Eigen::Index>(vocab_size));
  m.theta = RowMatrixXd::Zero(static_cast<Eigen::Index>(docs.size()), opt.topics);
  int samples = 0;
  for (int it = 1; it <= opt.iterations; ++it) {
    sampler.sweep();
    if (opt.log_joint_every > 0 && it % opt.log_joint_every == 0) m.log_joint_trace.push_back(sampler.log_joint());
    if (it > opt.burn_in) {
      m.phi += sampler.phi();
      m.theta += sampler.theta();
      ++samples;
    }
  }
  if (samples == 0) {
    m.phi = sampler.phi();
    m.theta = sampler.theta();
  } else {
    m.phi /= samples;
    m.theta /= samples;
    // Renormalize away accumulated rounding.
    for (Eigen::Index t = 0; t < m.phi.rows(); ++t) m.phi.row(t) /= m.phi.row(t).sum();
    for (Eigen::Index d = 0; d < m.theta.rows(); ++d) m.theta.row(d) /= m.theta.row(d).sum();
  }
  for (const auto& d : docs) m.doc_ids.push_back(d.doc_id);
  m.z = sampler.assignments();
  m.n_kw = sampler.topic_word();
  m.n_dk = sampler.doc_topic();
  m.n_k = sampler.topic_totals();
  return m;
}

TopicSummary top_words(const LdaModel& model, const Vocabulary& vocab, int topic, std::size_t n_top,
                       int cluster) {
  if (topic < 0 || topic >= model.topics) {
    throw InputError(fmt::format("topic id {} outside [0, {})", topic, model.topics));
  }
  const auto v = static_cast<std::size_t>(model.phi.cols());
  if (n_top > v) throw ParameterError("n_top exceeds vocabulary size");
  if (vocab.size() != v) throw ConsistencyError("vocabulary and phi sizes differ");
  std::vector<TokenId> ids(v);
  for (std::size_t i = 0; i < v; ++i) ids[i] = static_cast<TokenId>(i);
  const auto row = model.phi.row(topic);
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_top), ids.end(),
                    [&](TokenId a, TokenId b) {
                      if (row(a) != row(b)) return row(a) > row(b);
                      return vocab.token(a) < vocab.token(b);
                    });
  TopicSummary s{cluster, topic, {}};
  for (std::size_t r = 0; r < n_top; ++r) s.top_words.push_back({ids[r], vocab.token(ids[r]), row(ids[r])});
  return s;
}

std::string serialize_topic_summaries(std::span<const TopicSummary> topics) {
  std::string out = "cluster\ttopic\trank\ttoken\tprobability\n";
  for (const auto& t : topics) {
    for (std::size_t r = 0; r < t.top_words.size(); ++r) {
      out += fmt::format("{}\t{}\t{}\t{}\t{}\n", t.cluster, t.topic, r + 1, t.top_words[r].token,
                         t.top_words[r].probability);
    }
  }
  return out;
}

std::vector<TopicSummary> deserialize_topic_summaries(std::string_view text, const Vocabulary& vocab) {
  std::istringstream in{std::string(text)};
  std::string header;
  std::getline(in, header);
  if (header != "cluster\ttopic\trank\ttoken\tprobability") throw InputError("malformed topic table header");
  std::vector<TopicSummary> out;
  int cluster = 0, topic = 0;
  std::size_t rank = 0;
  std::string token;
  double p = 0;
  while (in >> cluster >> topic >> rank >> token >> p) {
    if (out.empty() || out.back().cluster != cluster || out.back().topic != topic) {
      out.push_back({cluster, topic, {}});
    }
    if (rank != out.back().top_words.size() + 1) throw InputError("topic table ranks out of order");
    out.back().top_words.push_back({vocab.id(token), token, p});
  }
  if (!in.eof()) throw InputError("malformed topic table row");
  return out;
}

std::string serialize_phi(const LdaModel& model) {
  std::string out;
  for (Eigen::Index t = 0; t < model.phi.rows(); ++t) {
    out += std::to_string(t);
    for (Eigen::Index w = 0; w < model.phi.cols(); ++w) out += fmt::format("{}{}", w ? ' ' : '\t', model.phi(t, w));
    out.push_back('\n');
  }
  return out;
}

std::string serialize_theta(const LdaModel& model) {
  std::string out;
  for (Eigen::Index d = 0; d < model.theta.rows(); ++d) {
    out += model.doc_ids.at(static_cast<std::size_t>(d));
    for (Eigen::Index t = 0; t < model.theta.cols(); ++t) out += fmt::format("{}{}", t ? ' ' : '\t', model.theta(d, t));
    out.push_back('\n');
  }
  return out;
}

std::string serialize_assignments(const LdaModel& model) {
  std::string out;
  for (std::size_t d = 0; d < model.z.size(); ++d) {
    out += model.doc_ids.at(d);
    out.push_back('\t');
    for (std::size_t i = 0; i < model.z[d].size(); ++i) {
      if (i) out.push_back(' ');
      out += std::to_string(model.z[d][i]);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace pubtrend
