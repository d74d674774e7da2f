#include <doctest.h>

#include "cot/cost.hpp"
#include "helpers.hpp"

using namespace cot;
using test_helpers::for_random_cases;
using test_helpers::random_points;

TEST_SUITE("ot_core") {

TEST_CASE("cost: euclidean squared on unit interval points") {
  Eigen::MatrixXd a(2, 1), b(2, 1);
  a << 0, 1;
  b << 0, 1;
  const CostMatrix c = build_cost(a, b, Metric::euclidean, 2.0);
  CHECK(c.entries(0, 0) == doctest::Approx(0.0));
  CHECK(c.entries(0, 1) == doctest::Approx(1.0));
  CHECK(c.entries(1, 0) == doctest::Approx(1.0));
  CHECK(c.entries(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("cost: 3-4-5 triangle") {
  Eigen::MatrixXd a(1, 2), b(1, 2);
  a << 1, 2;
  b << 4, 6;
  const CostMatrix c = build_cost(a, b, Metric::euclidean, 2.0);
  CHECK(c.entries(0, 0) == doctest::Approx(25.0));
}

TEST_CASE("cost: manhattan distances") {
  Eigen::MatrixXd a(2, 1), b(1, 1);
  a << 0, 2;
  b << 1;
  const CostMatrix c = build_cost(a, b, Metric::manhattan, 1.0);
  CHECK(c.entries(0, 0) == doctest::Approx(1.0));
  CHECK(c.entries(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("cost: self cost is symmetric with zero diagonal") {
  for_random_cases(200, 11, [](CounterRng& rng, int) {
    const Eigen::MatrixXd x = random_points(rng, 6, 3);
    const CostMatrix c = build_cost(x, x, Metric::euclidean, 2.0);
    CHECK(c.entries.diagonal().cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK((c.entries - c.entries.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(c.entries.minCoeff() >= 0.0);
  });
}

TEST_CASE("cost: standardized metric ignores affine column rescaling") {
  for_random_cases(100, 12, [](CounterRng& rng, int) {
    Eigen::MatrixXd x = random_points(rng, 8, 2);
    Eigen::MatrixXd y = x;
    y.col(0) = 3.5 * y.col(0).array() + 2.0;  // rescale + shift one column

    const Standardizer sx = pooled_standardizer(x);
    const Standardizer sy = pooled_standardizer(y);
    const CostMatrix cx =
        build_cost(x, x, Metric::standardized_euclidean, 2.0, sx);
    const CostMatrix cy =
        build_cost(y, y, Metric::standardized_euclidean, 2.0, sy);
    CHECK((cx.entries - cy.entries).cwiseAbs().maxCoeff() <= 1e-9);
  });
}

TEST_CASE("cost: mahalanobis agrees with whitened euclidean") {
  CounterRng rng(13);
  const Eigen::MatrixXd x = random_points(rng, 20, 3);
  const Standardizer s = pooled_standardizer(x);
  const CostMatrix cm = build_cost(x, x, Metric::mahalanobis, 2.0, s);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.covariance);
  const Eigen::MatrixXd w = es.eigenvectors() *
                            es.eigenvalues().array().rsqrt().matrix().asDiagonal() *
                            es.eigenvectors().transpose();
  const Eigen::MatrixXd xw = x * w;
  const CostMatrix ce = build_cost(xw, xw, Metric::euclidean, 2.0);
  CHECK((cm.entries - ce.entries).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("cost: error paths") {
  Eigen::MatrixXd a(2, 2), b(2, 3);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(build_cost(a, b, Metric::euclidean, 2.0),
                  std::invalid_argument);

  Eigen::MatrixXd bad = a;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(build_cost(bad, a, Metric::euclidean, 2.0),
                  std::invalid_argument);

  CHECK_THROWS_AS(build_cost(a, a, Metric::euclidean, 0.5),
                  std::invalid_argument);

  // Singular covariance must be signaled, not silently regularized.
  Eigen::MatrixXd degenerate(4, 2);
  degenerate << 1, 2, 2, 4, 3, 6, 4, 8;  // second column = 2 * first
  const Standardizer s = pooled_standardizer(degenerate);
  CHECK_THROWS_AS(
      build_cost(degenerate, degenerate, Metric::mahalanobis, 2.0, s),
      std::invalid_argument);
}

}  // TEST_SUITE
