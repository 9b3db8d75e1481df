#include "pubtrend/glove.hpp"

#include <cmath>

#include "pubtrend/errors.hpp"
#include "pubtrend/random.hpp"

namespace pubtrend {
namespace {

double cell_residual(const GloveModel& m, const CooccurrenceEntry& e) {
  return m.main.row(e.row).dot(m.context.row(e.col)) + m.main_bias(e.row) +
         m.context_bias(e.col) - std::log(e.value);
}

}  // namespace

double glove_weight(double x, double x_max, double alpha) {
  return x < x_max ? std::pow(x / x_max, alpha) : 1.0;
}

GloveModel init_glove(std::size_t vocab_size, int dim, std::uint64_t seed) {
  if (dim < 1) throw ParameterError("embedding dimension must be >= 1");
  const auto v = static_cast<Eigen::Index>(vocab_size);
  Rng rng(seed);
  auto init = [&](Eigen::Index rows, Eigen::Index cols) {
    RowMatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = (uniform01(rng) - 0.5) / dim;
    return m;
  };
  GloveModel m;
  m.main = init(v, dim);
  m.context = init(v, dim);
  m.main_bias = init(v, 1).col(0);
  m.context_bias = init(v, 1).col(0);
  m.main_sq = RowMatrixXd::Ones(v, dim);
  m.context_sq = RowMatrixXd::Ones(v, dim);
  m.main_bias_sq = Eigen::VectorXd::Ones(v);
  m.context_bias_sq = Eigen::VectorXd::Ones(v);
  return m;
}

double glove_loss(const GloveModel& model, std::span<const CooccurrenceEntry> cells, double x_max,
                  double alpha) {
  double j = 0.0;
  for (const auto& e : cells) {
    const double r = cell_residual(model, e);
    j += glove_weight(e.value, x_max, alpha) * r * r;
  }
  return j;
}

GloveGradient glove_gradient(const GloveModel& model, std::span<const CooccurrenceEntry> cells,
                             double x_max, double alpha) {
  GloveGradient g{RowMatrixXd::Zero(model.vocab_size(), model.dim()),
                  RowMatrixXd::Zero(model.vocab_size(), model.dim()),
                  Eigen::VectorXd::Zero(model.vocab_size()), Eigen::VectorXd::Zero(model.vocab_size())};
  for (const auto& e : cells) {
    const double s = 2.0 * glove_weight(e.value, x_max, alpha) * cell_residual(model, e);
    g.main.row(e.row) += s * model.context.row(e.col);
    g.context.row(e.col) += s * model.main.row(e.row);
    g.main_bias(e.row) += s;
    g.context_bias(e.col) += s;
  }
  return g;
}

GloveModel train_pubg(const CooccurrenceMatrix& x, const GloveOptions& opt) {
  if (x.empty()) throw InputError("co-occurrence matrix is empty");
  if (opt.epochs < 0) throw ParameterError("epochs must be >= 0");
  if (!(opt.learning_rate > 0.0)) throw ParameterError("learning rate must be positive");
  if (!(opt.x_max > 0.0)) throw ParameterError("x_max must be positive");

  GloveModel m = init_glove(x.vocab_size(), opt.dim, derive_seed(opt.seed, "glove-init"));
  std::vector<CooccurrenceEntry> cells = x.full_entries();
  Rng rng(derive_seed(opt.seed, "glove-shuffle"));
  Eigen::RowVectorXd grad_main(opt.dim), grad_ctx(opt.dim);

  for (int epoch = 1; epoch <= opt.epochs; ++epoch) {
    shuffle(cells.begin(), cells.end(), rng);
    for (const auto& e : cells) {
      const double s = 2.0 * glove_weight(e.value, opt.x_max, opt.alpha) * cell_residual(m, e);
      grad_main = s * m.context.row(e.col);
      grad_ctx = s * m.main.row(e.row);

      m.main.row(e.row).array() -=
          opt.learning_rate * grad_main.array() / m.main_sq.row(e.row).array().sqrt();
      m.context.row(e.col).array() -=
          opt.learning_rate * grad_ctx.array() / m.context_sq.row(e.col).array().sqrt();
      m.main_sq.row(e.row).array() += grad_main.array().square();
      m.context_sq.row(e.col).array() += grad_ctx.array().square();

      m.main_bias(e.row) -= opt.learning_rate * s / std::sqrt(m.main_bias_sq(e.row));
      m.context_bias(e.col) -= opt.learning_rate * s / std::sqrt(m.context_bias_sq(e.col));
      m.main_bias_sq(e.row) += s * s;
      m.context_bias_sq(e.col) += s * s;
    }
    const double loss = glove_loss(m, cells, opt.x_max, opt.alpha);
    if (!std::isfinite(loss)) throw DivergenceError(static_cast<std::size_t>(epoch), "GloVe loss is not finite");
    m.epoch_loss.push_back(loss);
  }
  return m;
}

}  // namespace pubtrend
