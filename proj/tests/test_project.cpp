#include <doctest.h>

#include <array>

#include "fixtures.hpp"
#include "pubtrend/errors.hpp"
#include "pubtrend/tsne.hpp"

using namespace pubtrend;
using namespace pubtrend::testing;

namespace {

RowMatrixXd two_blobs(std::uint64_t seed) {
  RowMatrixXd centers = RowMatrixXd::Zero(2, 50);
  centers(1, 0) = 20.0;
  return gaussian_blobs(centers, 10, 1.0, seed);
}

}  // namespace

TEST_CASE("perplexity search on hand fixtures") {
  const std::array<double, 3> equal = {0.0, 3.0, 3.0};
  const auto eq = perplexity_search(equal, 0, 2.0);
  CHECK(eq.p(0) == 0.0);
  CHECK(eq.p(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eq.p(2) == doctest::Approx(0.5).epsilon(1e-12));

  // Independent bisection on beta for squared distances (1, 2, 4) and
  // perplexity 2: beta = 1.04742, p = (0.717347, 0.251674, 0.030978).
  const std::array<double, 4> row = {0.0, 1.0, 2.0, 4.0};
  const auto r = perplexity_search(row, 0, 2.0);
  CHECK(r.p(0) == 0.0);
  CHECK(std::abs(r.p(1) - 0.717347) < 1e-3);
  CHECK(std::abs(r.p(2) - 0.251674) < 1e-3);
  CHECK(std::abs(r.p(3) - 0.030978) < 1e-3);
  CHECK(std::abs(r.beta - 1.0474243) < 1e-3);
  CHECK(std::abs(r.perplexity - 2.0) < 1e-3);
  CHECK(r.p.sum() == doctest::Approx(1.0).epsilon(1e-14));

  const std::array<double, 2> too_few = {0.0, 1.0};
  CHECK_THROWS_AS(perplexity_search(too_few, 0, 2.0), InputError);
  try {
    perplexity_search(row, 0, 2.0, 1e-12, 2);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.achieved()));
  }
}

TEST_CASE("joint probabilities are symmetric and normalized") {
  Rng rng(2);
  RowMatrixXd x(50, 5);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = standard_normal(rng);
  const auto jp = joint_probabilities(x, 10.0);
  for (const double p : jp.row_perplexity) CHECK(std::abs(p - 10.0) < 1e-3);
  CHECK((jp.p - jp.p.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(jp.p.sum() - 1.0) <= 1e-9);
  CHECK(jp.p.diagonal().isZero(0.0));
  CHECK((jp.p.array() >= 0).all());

  const RowMatrixXd d = squared_distance_matrix(x);
  CHECK(d(3, 7) == doctest::Approx((x.row(3) - x.row(7)).squaredNorm()).epsilon(1e-12));
  CHECK(d.diagonal().isZero(0.0));

  RowMatrixXd y(4, 2);
  y << 0, 0, 1, 0, 0, 2, 3, 3;
  const auto q = student_t_q(y);
  CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.diagonal().isZero(0.0));
  CHECK(q(0, 1) / q(0, 2) == doctest::Approx((1.0 + 4.0) / (1.0 + 1.0)));
  CHECK(kl_divergence(q, q) == doctest::Approx(0.0));
}

TEST_CASE("t-SNE separates two blobs") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TsneConfig cfg;
    cfg.seed = seed;
    const auto r = fit_tsne(two_blobs(seed), cfg);
    CHECK(r.perplexity == doctest::Approx(19.0 / 3.0));
    CHECK(r.warnings.size() == 1);
    REQUIRE(r.coords.rows() == 20);
    CHECK(r.coords.allFinite());
    double within = 0.0, between = 0.0;
    int n_within = 0, n_between = 0;
    for (Eigen::Index i = 0; i < 20; ++i) {
      for (Eigen::Index j = i + 1; j < 20; ++j) {
        const double dist = (r.coords.row(i) - r.coords.row(j)).norm();
        if (i / 10 == j / 10) {
          within += dist;
          ++n_within;
        } else {
          between += dist;
          ++n_between;
        }
      }
    }
    CHECK(within / n_within < between / n_between);
    REQUIRE(r.kl_trace.size() == 1000);
    CHECK(r.kl_trace[999] < r.kl_trace[299]);
    for (const double kl : r.kl_trace) CHECK(std::isfinite(kl));
  }
}

TEST_CASE("t-SNE determinism and input checks") {
  TsneConfig cfg;
  cfg.iterations = 300;
  cfg.seed = 9;
  const auto a = fit_tsne(two_blobs(3), cfg);
  const auto b = fit_tsne(two_blobs(3), cfg);
  CHECK(a.coords == b.coords);
  CHECK_THROWS_AS(fit_tsne(RowMatrixXd::Zero(4, 3), cfg), InputError);
  RowMatrixXd bad = two_blobs(1);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(fit_tsne(bad, cfg), InputError);
}

TEST_CASE("t-SNE export rows") {
  RowMatrixXd coords(2, 2);
  coords << 0.5, -1, 2, 0.25;
  const std::vector<std::string> ids = {"a", "b"};
  const std::vector<int> clusters = {3, 0}, years = {2007, 2010};
  CHECK(serialize_tsne(ids, coords, clusters, years) ==
        "doc_id\tx\ty\tcluster\tyear\na\t0.5\t-1\t3\t2007\nb\t2\t0.25\t0\t2010\n");
}
