#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cot {

// Discrete probability measure over a set of unit indices.
struct DiscreteMeasure {
  std::vector<int> support;  // unit indices, one per atom
  Eigen::VectorXd masses;    // nonnegative, sums to 1

  int size() const { return static_cast<int>(masses.size()); }
};

// Uniform measure over units 0..n-1.
DiscreteMeasure uniform_measure(int n);

// Measure with the given masses over units 0..n-1 (normalizes defensively
// only within the stated tolerance; throws otherwise).
DiscreteMeasure measure_from_masses(const Eigen::VectorXd& masses);

DiscreteMeasure measure_over(const std::vector<int>& support,
                             const Eigen::VectorXd& masses);

// Throws std::invalid_argument unless masses are nonnegative and sum to 1
// within 1e-12, with support aligned to masses.
void validate_measure(const DiscreteMeasure& m);

}  // namespace cot
