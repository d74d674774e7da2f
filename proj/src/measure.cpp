#include "cot/measure.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cot {

DiscreteMeasure uniform_measure(int n) {
  if (n <= 0) throw std::invalid_argument("measure needs at least one atom");
  DiscreteMeasure m;
  m.support.resize(n);
  std::iota(m.support.begin(), m.support.end(), 0);
  m.masses = Eigen::VectorXd::Constant(n, 1.0 / n);
  return m;
}

DiscreteMeasure measure_from_masses(const Eigen::VectorXd& masses) {
  std::vector<int> support(masses.size());
  std::iota(support.begin(), support.end(), 0);
  return measure_over(support, masses);
}

DiscreteMeasure measure_over(const std::vector<int>& support,
                             const Eigen::VectorXd& masses) {
  DiscreteMeasure m;
  m.support = support;
  m.masses = masses;
  validate_measure(m);
  return m;
}

void validate_measure(const DiscreteMeasure& m) {
  if (static_cast<int>(m.support.size()) != m.masses.size())
    throw std::invalid_argument("measure support/mass length mismatch");
  if (m.masses.size() == 0)
    throw std::invalid_argument("measure needs at least one atom");
  if ((m.masses.array() < 0).any())
    throw std::invalid_argument("measure has negative mass");
  const double total = m.masses.sum();
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("measure masses must sum to 1 (got " +
                                std::to_string(total) + ")");
}

}  // namespace cot
