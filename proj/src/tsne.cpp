#include "pubtrend/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "pubtrend/errors.hpp"
#include "pubtrend/random.hpp"

namespace pubtrend {

ConditionalRow perplexity_search(std::span<const double> squared_distances, std::optional<std::size_t> self,
                                 double target, double tol, int max_steps) {
  const std::size_t n = squared_distances.size();
  std::size_t neighbors = 0;
  double d_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    if (self && j == *self) continue;
    if (!std::isfinite(squared_distances[j])) continue;
    ++neighbors;
    d_min = std::min(d_min, squared_distances[j]);
  }
  if (neighbors < 2) throw InputError("perplexity search needs at least 2 finite neighbor distances");
  if (!(target > 0.0)) throw ParameterError("perplexity must be positive");

  ConditionalRow row;
  row.p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const double log_target = std::log(target);
  double beta = 1.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  // Shifting by the smallest distance leaves p unchanged and avoids underflow.
  auto evaluate = [&](double b) {
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = squared_distances[j];
      if ((self && j == *self) || !std::isfinite(d)) {
        row.p(static_cast<Eigen::Index>(j)) = 0.0;
        continue;
      }
      const double e = std::exp(-b * (d - d_min));
      row.p(static_cast<Eigen::Index>(j)) = e;
      sum += e;
      weighted += e * (d - d_min);
    }
    row.p /= sum;
    return std::log(sum) + b * weighted / sum;  // entropy in nats
  };

  for (int step = 0; step < max_steps; ++step) {
    const double h = evaluate(beta);
    row.beta = beta;
    row.perplexity = std::exp(h);
    if (std::abs(row.perplexity - target) <= tol) return row;
    if (h > log_target) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
    } else {
      hi = beta;
      beta = 0.5 * (beta + lo);
    }
  }
  throw ConvergenceError(row.perplexity,
                         fmt::format("perplexity search reached {} instead of {}", row.perplexity, target));
}

RowMatrixXd squared_distance_matrix(const RowMatrixXd& x) {
  const Eigen::VectorXd norms = x.rowwise().squaredNorm();
  RowMatrixXd d = (-2.0 * (x * x.transpose())).eval();
  d.colwise() += norms;
  d.rowwise() += norms.transpose();
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return d;
}

JointProbabilities joint_probabilities(const RowMatrixXd& x, double perplexity, double tol, int max_steps) {
  const Eigen::Index n = x.rows();
  const RowMatrixXd d = squared_distance_matrix(x);
  RowMatrixXd cond(n, n);
  JointProbabilities out;
  out.row_perplexity.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = perplexity_search(std::span<const double>(d.row(i).data(), static_cast<std::size_t>(n)),
                                       static_cast<std::size_t>(i), perplexity, tol, max_steps);
    cond.row(i) = row.p.transpose();
    out.row_perplexity.push_back(row.perplexity);
  }
  out.p = (cond + cond.transpose()) / (2.0 * static_cast<double>(n));
  return out;
}

RowMatrixXd student_t_q(const RowMatrixXd& y) {
  RowMatrixXd num = (1.0 + squared_distance_matrix(y).array()).inverse().matrix();
  num.diagonal().setZero();
  return num / num.sum();
}

double kl_divergence(const RowMatrixXd& p, const RowMatrixXd& q) {
  double kl = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const double pij = p(i, j);
      if (pij > 0.0) kl += pij * std::log(pij / std::max(q(i, j), std::numeric_limits<double>::min()));
    }
  }
  return kl;
}

TsneResult fit_tsne(const RowMatrixXd& x, const TsneConfig& cfg) {
  const Eigen::Index n = x.rows();
  if (n < 5) throw InputError("t-SNE needs at least 5 points");
  if (!x.allFinite()) throw InputError("t-SNE input contains non-finite values");
  if (!(cfg.early_exaggeration >= 1.0)) throw ParameterError("early exaggeration must be >= 1");
  if (cfg.iterations < 0) throw ParameterError("t-SNE iterations must be >= 0");

  TsneResult result;
  result.perplexity = cfg.perplexity;
  const double max_perplexity = static_cast<double>(n - 1) / 3.0;
  if (result.perplexity > max_perplexity) {
    result.warnings.push_back(fmt::format("perplexity {} clamped to {} for {} points", cfg.perplexity,
                                          max_perplexity, n));
    result.perplexity = max_perplexity;
  }
  const RowMatrixXd p = joint_probabilities(x, result.perplexity, cfg.perplexity_tol, cfg.max_search_steps).p;

  Rng rng(cfg.seed);
  RowMatrixXd y(n, 2);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < 2; ++k) y(i, k) = cfg.init_scale * standard_normal(rng);

  RowMatrixXd update = RowMatrixXd::Zero(n, 2);
  RowMatrixXd gains = RowMatrixXd::Ones(n, 2);
  RowMatrixXd grad(n, 2);
  RowMatrixXd num(n, n);

  for (int it = 0; it < cfg.iterations; ++it) {
    const double exaggeration = it < cfg.exaggeration_iterations ? cfg.early_exaggeration : 1.0;
    const double momentum = it < cfg.momentum_switch ? cfg.initial_momentum : cfg.final_momentum;

    num = (1.0 + squared_distance_matrix(y).array()).inverse().matrix();
    num.diagonal().setZero();
    const double z = num.sum();
    result.kl_trace.push_back(kl_divergence(p, num / z));

    // dC/dy_i = 4 sum_j (exag p_ij - q_ij) (y_i - y_j) / (1 + |y_i - y_j|^2)
    const RowMatrixXd w = ((exaggeration * p).array() - num.array() / z).matrix().cwiseProduct(num);
    const Eigen::VectorXd w_rows = w.rowwise().sum();
    grad = 4.0 * (w_rows.asDiagonal() * y - w * y);
    if (!grad.allFinite()) throw DivergenceError(static_cast<std::size_t>(it + 1), "t-SNE gradient is not finite");

    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < 2; ++k) {
        const bool same_sign = (grad(i, k) > 0.0) == (update(i, k) > 0.0);
        gains(i, k) = same_sign ? std::max(gains(i, k) * 0.8, 0.01) : gains(i, k) + 0.2;
      }
    }
    update = momentum * update - cfg.learning_rate * gains.cwiseProduct(grad);
    y += update;
    y.rowwise() -= y.colwise().mean();
  }
  result.coords = std::move(y);
  return result;
}

std::string serialize_tsne(std::span<const std::string> doc_ids, const RowMatrixXd& coords,
                           std::span<const int> clusters, std::span<const int> years) {
  const auto n = static_cast<std::size_t>(coords.rows());
  if (doc_ids.size() != n || clusters.size() != n || years.size() != n) {
    throw InputError("t-SNE export columns differ in length");
  }
  std::string out = "doc_id\tx\ty\tcluster\tyear\n";
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", doc_ids[i], coords(r, 0), coords(r, 1), clusters[i], years[i]);
  }
  return out;
}

}  // namespace pubtrend
