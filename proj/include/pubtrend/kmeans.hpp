#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pubtrend/errors.hpp"
#include "pubtrend/linalg.hpp"
#include "pubtrend/random.hpp"

namespace pubtrend {

template <typename Scalar>
struct KMeansModel {
  RowMatrix<Scalar> centroids;    // K x d
  std::vector<int> assignments;   // cluster id per input row
  Scalar inertia = 0;             // sum of squared distances to own centroid
  int iterations_run = 0;
  std::uint64_t seed = 0;         // seed of the winning restart
  std::vector<Scalar> inertia_trace;     // winning run, after every update step
  std::vector<Scalar> restart_inertias;  // final inertia of each restart

  int k() const { return static_cast<int>(centroids.rows()); }
  Eigen::Index dim() const { return centroids.cols(); }
};

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  double tol = 1e-6;  // stop when no centroid moves farther than this
  std::uint64_t seed = 0;
  bool refine = true;  // single-point moves after Lloyd converges
};

namespace detail {

template <typename A, typename B>
auto squared_distance(const A& a, const B& b) {
  return (a - b).squaredNorm();
}

template <typename Scalar, typename Derived>
int nearest_centroid(const RowMatrix<Scalar>& centroids, const Eigen::MatrixBase<Derived>& x,
                     Scalar* best_distance = nullptr) {
  int best = 0;
  Scalar best_d = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const Scalar d = squared_distance(centroids.row(c), x);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (best_distance) *best_distance = best_d;
  return best;
}

template <typename Scalar>
RowMatrix<Scalar> kmeanspp_init(const RowMatrix<Scalar>& x, int k, Rng& rng) {
  const Eigen::Index n = x.rows();
  RowMatrix<Scalar> centroids(k, x.cols());
  centroids.row(0) = x.row(static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(n))));
  std::vector<Scalar> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = squared_distance(x.row(i), centroids.row(0));
  for (int c = 1; c < k; ++c) {
    Scalar total = 0;
    for (const Scalar v : d2) total += v;
    Eigen::Index pick = n - 1;
    if (total > 0) {
      const double r = uniform01(rng) * static_cast<double>(total);
      double acc = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += static_cast<double>(d2[static_cast<std::size_t>(i)]);
        if (r < acc) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(uniform_index(rng, static_cast<std::size_t>(n)));
    }
    centroids.row(c) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[static_cast<std::size_t>(i)] =
          std::min(d2[static_cast<std::size_t>(i)], squared_distance(x.row(i), centroids.row(c)));
    }
  }
  return centroids;
}

template <typename Scalar>
Scalar total_inertia(const RowMatrix<Scalar>& x, const RowMatrix<Scalar>& centroids,
                     const std::vector<int>& assignments) {
  Scalar j = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    j += squared_distance(x.row(i), centroids.row(assignments[static_cast<std::size_t>(i)]));
  }
  return j;
}

// Means of assigned points. An empty cluster takes the point farthest from its
// own centroid (among points whose clusters keep at least one other member).
template <typename Scalar>
void update_centroids(const RowMatrix<Scalar>& x, RowMatrix<Scalar>& centroids,
                      std::vector<int>& assignments) {
  const int k = static_cast<int>(centroids.rows());
  auto recompute = [&](std::vector<Eigen::Index>& sizes) {
    RowMatrix<Scalar> sums = RowMatrix<Scalar>::Zero(k, x.cols());
    sizes.assign(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const int a = assignments[static_cast<std::size_t>(i)];
      sums.row(a) += x.row(i);
      ++sizes[static_cast<std::size_t>(a)];
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) {
        centroids.row(c) = sums.row(c) / static_cast<Scalar>(sizes[static_cast<std::size_t>(c)]);
      }
    }
  };
  std::vector<Eigen::Index> sizes;
  recompute(sizes);
  bool reseeded = false;
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    Scalar far_d = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const int a = assignments[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(a)] < 2) continue;
      const Scalar d = squared_distance(x.row(i), centroids.row(a));
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far < 0) continue;  // every point sits on its centroid already
    --sizes[static_cast<std::size_t>(assignments[static_cast<std::size_t>(far)])];
    assignments[static_cast<std::size_t>(far)] = c;
    sizes[static_cast<std::size_t>(c)] = 1;
    centroids.row(c) = x.row(far);
    reseeded = true;
  }
  if (reseeded) recompute(sizes);
}

// Moves single points between clusters while a move lowers inertia: taking x
// out of a (size n_a) saves n_a / (n_a - 1) |x - c_a|^2 and adding it to b
// costs n_b / (n_b + 1) |x - c_b|^2. Stable partitions are Lloyd fixed points.
template <typename Scalar>
void hartigan_refine(const RowMatrix<Scalar>& x, KMeansModel<Scalar>& m, int max_passes) {
  const int k = m.k();
  std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k), 0);
  for (const int a : m.assignments) ++sizes[static_cast<std::size_t>(a)];
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const int a = m.assignments[static_cast<std::size_t>(i)];
      const auto n_a = static_cast<Scalar>(sizes[static_cast<std::size_t>(a)]);
      if (n_a < 2) continue;
      const Scalar saving = n_a / (n_a - 1) * squared_distance(x.row(i), m.centroids.row(a));
      int best = a;
      Scalar best_cost = saving;
      for (int b = 0; b < k; ++b) {
        if (b == a) continue;
        const auto n_b = static_cast<Scalar>(sizes[static_cast<std::size_t>(b)]);
        const Scalar cost = n_b / (n_b + 1) * squared_distance(x.row(i), m.centroids.row(b));
        if (cost < best_cost) {
          best_cost = cost;
          best = b;
        }
      }
      // Relative margin keeps rounding noise from cycling points back and forth.
      if (best == a || best_cost >= saving * (1 - 64 * std::numeric_limits<Scalar>::epsilon())) continue;
      const auto n_b = static_cast<Scalar>(sizes[static_cast<std::size_t>(best)]);
      m.centroids.row(a) = (m.centroids.row(a) * n_a - x.row(i)) / (n_a - 1);
      m.centroids.row(best) = (m.centroids.row(best) * n_b + x.row(i)) / (n_b + 1);
      --sizes[static_cast<std::size_t>(a)];
      ++sizes[static_cast<std::size_t>(best)];
      m.assignments[static_cast<std::size_t>(i)] = best;
      moved = true;
    }
    if (!moved) break;
    update_centroids(x, m.centroids, m.assignments);  // exact means, no drift from the running updates
    m.inertia_trace.push_back(total_inertia(x, m.centroids, m.assignments));
  }
}

template <typename Scalar>
KMeansModel<Scalar> lloyd(const RowMatrix<Scalar>& x, int k, int max_iter, double tol,
                          std::uint64_t seed, bool refine) {
  Rng rng(seed);
  KMeansModel<Scalar> m;
  m.seed = seed;
  m.centroids = kmeanspp_init(x, k, rng);
  m.assignments.assign(static_cast<std::size_t>(x.rows()), -1);

  for (int iter = 1; iter <= max_iter; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const int a = nearest_centroid(m.centroids, x.row(i));
      if (a != m.assignments[static_cast<std::size_t>(i)]) {
        m.assignments[static_cast<std::size_t>(i)] = a;
        changed = true;
      }
    }
    if (!changed) break;
    m.iterations_run = iter;
    const RowMatrix<Scalar> before = m.centroids;
    update_centroids(x, m.centroids, m.assignments);
    m.inertia_trace.push_back(total_inertia(x, m.centroids, m.assignments));
    const Scalar shift = (m.centroids - before).rowwise().norm().maxCoeff();
    if (static_cast<double>(shift) < tol) break;
  }
  if (refine) hartigan_refine(x, m, max_iter);
  // Final assignment so labels are the argmin for the returned centroids.
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    m.assignments[static_cast<std::size_t>(i)] = nearest_centroid(m.centroids, x.row(i));
  }
  m.inertia = total_inertia(x, m.centroids, m.assignments);
  return m;
}

}  // namespace detail

// k-means++ seeding, Lloyd iterations and (with options.refine) single-point
// refinement, best of `restarts` by inertia. Restart r uses
// derive_seed(options.seed, r). Throws ParameterError if k is outside [1, n]
// and InputError on non-finite input.
template <typename Derived>
KMeansModel<typename Derived::Scalar> fit_kmeans(const Eigen::MatrixBase<Derived>& points, int k,
                                                 const KMeansOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  const RowMatrix<Scalar> x = points;
  if (x.rows() == 0) throw InputError("k-means needs at least one point");
  if (k < 1 || k > x.rows()) {
    throw ParameterError("k-means K=" + std::to_string(k) + " must lie in [1, " + std::to_string(x.rows()) + "]");
  }
  if (options.restarts < 1) throw ParameterError("k-means restarts must be >= 1");
  if (options.max_iter < 1) throw ParameterError("k-means max_iter must be >= 1");
  if (!x.allFinite()) throw InputError("k-means input contains non-finite values");

  KMeansModel<Scalar> best;
  std::vector<Scalar> inertias;
  for (int r = 0; r < options.restarts; ++r) {
    auto run = detail::lloyd<Scalar>(x, k, options.max_iter, options.tol,
                                     derive_seed(options.seed, static_cast<std::uint64_t>(r)), options.refine);
    inertias.push_back(run.inertia);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  best.restart_inertias = std::move(inertias);
  return best;
}

// Index of the nearest centroid; ties go to the lowest id.
template <typename Scalar, typename Derived>
int assign_cluster(const KMeansModel<Scalar>& model, const Eigen::MatrixBase<Derived>& vector) {
  if (vector.size() != model.dim()) {
    throw InputError("vector has dimension " + std::to_string(vector.size()) + ", model expects " +
                     std::to_string(model.dim()));
  }
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> row(vector.size());
  for (Eigen::Index i = 0; i < vector.size(); ++i) row(i) = vector.derived().coeff(i);
  return detail::nearest_centroid(model.centroids, row);
}

template <typename Scalar>
struct ElbowReport {
  std::vector<int> k_values;
  std::vector<Scalar> inertias;
  int knee = 0;
  bool degenerate = false;  // flat curve; knee falls back to the first K
};

// Inertia per K; the knee maximizes the perpendicular distance from
// (k, inertia) to the chord through the first and last points.
template <typename Derived>
ElbowReport<typename Derived::Scalar> elbow_scan(const Eigen::MatrixBase<Derived>& points,
                                                 const std::vector<int>& k_values,
                                                 const KMeansOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  if (k_values.size() < 3) throw ParameterError("elbow scan needs at least 3 K values");
  ElbowReport<Scalar> report;
  report.k_values = k_values;
  for (const int k : k_values) report.inertias.push_back(fit_kmeans(points, k, options).inertia);

  const double x0 = k_values.front(), y0 = static_cast<double>(report.inertias.front());
  const double x1 = k_values.back(), y1 = static_cast<double>(report.inertias.back());
  const double dx = x1 - x0, dy = y1 - y0;
  const double norm = std::hypot(dx, dy);
  double best = -1.0;
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    const double xi = k_values[i], yi = static_cast<double>(report.inertias[i]);
    const double dist = norm > 0 ? std::abs(dy * xi - dx * yi + x1 * y0 - y1 * x0) / norm : 0.0;
    if (dist > best) {
      best = dist;
      report.knee = k_values[i];
    }
  }
  const auto [lo, hi] = std::minmax_element(report.inertias.begin(), report.inertias.end());
  const double scale = std::max(std::abs(static_cast<double>(*hi)), 1.0);
  if (static_cast<double>(*hi - *lo) <= 1e-12 * scale) {
    report.degenerate = true;
    report.knee = k_values.front();
  }
  return report;
}

// Text persistence for double models; assignments are keyed by doc_id.
std::string serialize_kmeans(const KMeansModel<double>& model, std::span<const std::string> doc_ids);

struct StoredKMeans {
  KMeansModel<double> model;
  std::vector<std::string> doc_ids;
};
StoredKMeans deserialize_kmeans(std::string_view text);

// "k\tinertia" rows with a header line.
std::string serialize_elbow(const ElbowReport<double>& report);

}  // namespace pubtrend
