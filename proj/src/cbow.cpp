#include "pubtrend/cbow.hpp"

#include <algorithm>
#include <cmath>

#include "pubtrend/errors.hpp"
#include "pubtrend/random.hpp"

namespace pubtrend {
namespace {

Eigen::RowVectorXd context_mean(const CbowModel& m, const std::vector<TokenId>& context) {
  Eigen::RowVectorXd h = Eigen::RowVectorXd::Zero(m.dim());
  for (const TokenId c : context) h += m.input.row(c);
  return h / static_cast<double>(context.size());
}

// Softmax of output * h, computed with the max shift.
Eigen::VectorXd softmax_scores(const CbowModel& m, const Eigen::RowVectorXd& h) {
  Eigen::VectorXd u = m.output * h.transpose();
  const double mx = u.maxCoeff();
  u = (u.array() - mx).exp();
  return u / u.sum();
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

TokenId sample_noise(const std::vector<double>& cdf, Rng& rng) {
  const double r = uniform01(rng) * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
  return static_cast<TokenId>(std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1));
}

}  // namespace

std::vector<CbowExample> cbow_examples(std::span<const TokenDoc> docs, int window) {
  if (window < 1) throw ParameterError("CBOW window must be >= 1");
  const auto w = static_cast<std::size_t>(window);
  std::vector<CbowExample> out;
  for (const auto& doc : docs) {
    const auto& t = doc.tokens;
    if (t.size() <= w) continue;
    for (std::size_t p = 0; p < t.size(); ++p) {
      CbowExample ex{t[p], {}};
      const std::size_t lo = p >= w ? p - w : 0;
      const std::size_t hi = std::min(t.size() - 1, p + w);
      for (std::size_t q = lo; q <= hi; ++q) {
        if (q != p) ex.context.push_back(t[q]);
      }
      out.push_back(std::move(ex));
    }
  }
  return out;
}

double cbow_softmax_loss(const CbowModel& model, std::span<const CbowExample> examples) {
  if (examples.empty()) return 0.0;
  double loss = 0.0;
  for (const auto& ex : examples) {
    const Eigen::RowVectorXd h = context_mean(model, ex.context);
    const Eigen::VectorXd u = model.output * h.transpose();
    const double mx = u.maxCoeff();
    const double log_z = mx + std::log((u.array() - mx).exp().sum());
    loss += log_z - u(ex.target);
  }
  return loss / static_cast<double>(examples.size());
}

CbowGradient cbow_softmax_gradient(const CbowModel& model, std::span<const CbowExample> examples) {
  CbowGradient g{RowMatrixXd::Zero(model.vocab_size(), model.dim()),
                 RowMatrixXd::Zero(model.vocab_size(), model.dim())};
  if (examples.empty()) return g;
  const double scale = 1.0 / static_cast<double>(examples.size());
  for (const auto& ex : examples) {
    const Eigen::RowVectorXd h = context_mean(model, ex.context);
    Eigen::VectorXd err = softmax_scores(model, h);
    err(ex.target) -= 1.0;
    g.output.noalias() += scale * err * h;
    const Eigen::RowVectorXd dh = (err.transpose() * model.output) * scale;
    const double share = 1.0 / static_cast<double>(ex.context.size());
    for (const TokenId c : ex.context) g.input.row(c) += share * dh;
  }
  return g;
}

CbowModel train_pubw(std::span<const TokenDoc> docs, std::size_t vocab_size, const CbowOptions& opt) {
  if (docs.empty()) throw InputError("CBOW training needs at least one document");
  if (opt.dim < 1) throw ParameterError("embedding dimension must be >= 1");
  if (opt.negatives < 0) throw ParameterError("negative sample count must be >= 0");
  if (opt.epochs < 0) throw ParameterError("epochs must be >= 0");
  std::vector<CbowExample> examples = cbow_examples(docs, opt.window);
  if (examples.empty()) throw PipelineError("no CBOW training pairs: every document is within the window size");

  const auto v = static_cast<Eigen::Index>(vocab_size);
  CbowModel m;
  m.window = opt.window;
  m.negatives = opt.negatives;
  Rng init_rng(derive_seed(opt.seed, "cbow-init"));
  m.input.resize(v, opt.dim);
  for (Eigen::Index i = 0; i < v; ++i)
    for (Eigen::Index j = 0; j < opt.dim; ++j) m.input(i, j) = (uniform01(init_rng) - 0.5) / opt.dim;
  m.output = RowMatrixXd::Zero(v, opt.dim);

  std::vector<double> counts(vocab_size, 0.0);
  for (const auto& doc : docs)
    for (const TokenId t : doc.tokens) counts.at(static_cast<std::size_t>(t)) += 1.0;
  m.noise_cdf.resize(vocab_size);
  double acc = 0.0;
  for (std::size_t i = 0; i < vocab_size; ++i) {
    acc += std::pow(counts[i], 0.75);
    m.noise_cdf[i] = acc;
  }

  Rng rng(derive_seed(opt.seed, "cbow-train"));
  const double total_steps = static_cast<double>(examples.size()) * std::max(opt.epochs, 1);
  double step = 0.0;
  Eigen::RowVectorXd h(opt.dim), neu1e(opt.dim);

  for (int epoch = 1; epoch <= opt.epochs; ++epoch) {
    shuffle(examples.begin(), examples.end(), rng);
    double epoch_loss = 0.0;
    for (const auto& ex : examples) {
      const double lr = opt.learning_rate * std::max(1e-4, 1.0 - step / total_steps);
      step += 1.0;
      h = context_mean(m, ex.context);
      const double share = 1.0 / static_cast<double>(ex.context.size());

      if (opt.objective == CbowObjective::full_softmax) {
        Eigen::VectorXd err = softmax_scores(m, h);
        epoch_loss -= std::log(std::max(err(ex.target), 1e-300));
        err(ex.target) -= 1.0;
        neu1e = err.transpose() * m.output;
        m.output.noalias() -= lr * err * h;
        for (const TokenId c : ex.context) m.input.row(c) -= lr * share * neu1e;
      } else {
        neu1e.setZero();
        for (int k = 0; k <= opt.negatives; ++k) {
          TokenId word = ex.target;
          double label = 1.0;
          if (k > 0) {
            word = sample_noise(m.noise_cdf, rng);
            if (word == ex.target) continue;
            label = 0.0;
          }
          const double score = sigmoid(m.output.row(word).dot(h));
          epoch_loss -= label > 0.0 ? std::log(std::max(score, 1e-300))
                                    : std::log(std::max(1.0 - score, 1e-300));
          const double g = (label - score) * lr;
          neu1e += g * m.output.row(word);
          m.output.row(word) += g * h;
        }
        // word2vec convention: each context row receives the full hidden-layer error.
        for (const TokenId c : ex.context) m.input.row(c) += neu1e;
      }
    }
    epoch_loss /= static_cast<double>(examples.size());
    if (!std::isfinite(epoch_loss) || !m.input.allFinite()) {
      throw DivergenceError(static_cast<std::size_t>(epoch), "CBOW training diverged");
    }
    m.epoch_loss.push_back(epoch_loss);
  }
  return m;
}

}  // namespace pubtrend
