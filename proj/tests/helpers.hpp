#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cot/cost.hpp"
#include "cot/measure.hpp"
#include "cot/rng.hpp"

namespace test_helpers {

// Runs fn(rng, case_index) over independent substreams; the property harness
// used throughout the suites.
template <class Fn>
void for_random_cases(int cases, std::uint64_t seed, Fn&& fn) {
  for (int c = 0; c < cases; ++c) {
    cot::CounterRng rng(seed, static_cast<std::uint64_t>(c) + 1);
    fn(rng, c);
  }
}

inline Eigen::MatrixXd random_points(cot::CounterRng& rng, int n, int d,
                                     double scale = 1.0) {
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = scale * rng.normal();
  return x;
}

inline cot::DiscreteMeasure random_measure(cot::CounterRng& rng, int n,
                                           bool allow_zeros = false) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = rng.uniform() + 0.05;
    if (allow_zeros && rng.bernoulli(0.25)) w[i] = 0.0;
  }
  if (w.sum() <= 0) w[rng.index(n)] = 1.0;
  w /= w.sum();
  // Exact renormalization to survive the 1e-12 invariant.
  w[n - 1] += 1.0 - w.sum();
  if (w[n - 1] < 0) w[n - 1] = 0;
  w /= w.sum();
  w[0] += 1.0 - w.sum();
  return cot::measure_from_masses(w);
}

// Rational masses with small denominators.
inline cot::DiscreteMeasure rational_measure(cot::CounterRng& rng, int n) {
  const int denom = 4 + rng.index(5);
  Eigen::VectorXi counts(n);
  int total = 0;
  for (int i = 0; i < n; ++i) {
    counts[i] = (i == 0) ? 1 : rng.index(denom);
    total += counts[i];
  }
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = double(counts[i]) / total;
  return cot::measure_from_masses(w);
}

inline cot::CostMatrix random_cost(cot::CounterRng& rng, int n, int m, int d = 2,
                                   double p = 2.0) {
  const Eigen::MatrixXd a = random_points(rng, n, d);
  const Eigen::MatrixXd b = random_points(rng, n == m ? 0 : m, d);
  if (n == m && rng.bernoulli(0.5)) {
    return cot::build_cost(a, a, cot::Metric::euclidean, p);
  }
  const Eigen::MatrixXd bb = (b.rows() == m) ? b : random_points(rng, m, d);
  return cot::build_cost(a, bb, cot::Metric::euclidean, p);
}

// Brute-force optimum of a 2x2 transportation problem (one free parameter).
inline double exact_2x2_value(const Eigen::MatrixXd& c, const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b) {
  const double lo = std::max(0.0, a[0] + b[0] - 1.0);
  const double hi = std::min(a[0], b[0]);
  auto value = [&](double t) {
    return c(0, 0) * t + c(0, 1) * (a[0] - t) + c(1, 0) * (b[0] - t) +
           c(1, 1) * (1.0 - a[0] - b[0] + t);
  };
  return std::min(value(lo), value(hi));
}

// Objective of a candidate weighted-median value.
inline double weighted_abs_loss(const Eigen::VectorXd& values,
                                const Eigen::VectorXd& weights, double nu) {
  return (weights.array() * (values.array() - nu).abs()).sum();
}

}  // namespace test_helpers
