#include "cot/quadratic_ot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cot {

namespace detail {

double piecewise_linear_root(std::vector<double>& thresholds, double budget) {
  std::sort(thresholds.begin(), thresholds.end());
  const int m = static_cast<int>(thresholds.size());
  if (budget <= 0) return thresholds.front();
  double partial = 0.0;  // sum of the k smallest thresholds
  for (int k = 1; k <= m; ++k) {
    partial += thresholds[k - 1];
    const double t = (budget + partial) / k;
    const bool above = t > thresholds[k - 1];
    const bool below = (k == m) || t <= thresholds[k];
    if (above && below) return t;
  }
  return (budget + partial) / m;
}

double quadratic_dual_value(const Eigen::MatrixXd& cost,
                            const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                            double lambda, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& g) {
  double quad = 0.0;
  for (int j = 0; j < cost.cols(); ++j) {
    for (int i = 0; i < cost.rows(); ++i) {
      const double s = f[i] + g[j] - cost(i, j);
      if (s > 0) quad += s * s;
    }
  }
  return f.dot(a) + g.dot(b) - quad / (2.0 * lambda);
}

}  // namespace detail

OtResult l2_ot(const CostMatrix& cost, const DiscreteMeasure& a,
               const DiscreteMeasure& b, double lambda,
               const SinkhornOptions& options) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
  if (!cost.entries.allFinite())
    throw std::invalid_argument("cost matrix has non-finite entries");
  const int n = static_cast<int>(cost.entries.rows());
  const int m = static_cast<int>(cost.entries.cols());
  if (a.size() != n || b.size() != m)
    throw std::invalid_argument("marginals do not match cost dimensions");
  validate_measure(a);
  validate_measure(b);
  const Eigen::MatrixXd& c = cost.entries;

  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  std::vector<double> thresholds;

  OtResult result;
  result.converged = false;
  double violation = 1.0;
  int it = 0;
  for (; it < options.max_iter; ++it) {
    // Row block: each f_i solves sum_j (f_i - (C_ij - g_j))_+ = lambda*a_i.
    for (int i = 0; i < n; ++i) {
      thresholds.resize(m);
      for (int j = 0; j < m; ++j) thresholds[j] = c(i, j) - g[j];
      f[i] = detail::piecewise_linear_root(thresholds, lambda * a.masses[i]);
    }
    // Column block.
    for (int j = 0; j < m; ++j) {
      thresholds.resize(n);
      for (int i = 0; i < n; ++i) thresholds[i] = c(i, j) - f[i];
      g[j] = detail::piecewise_linear_root(thresholds, lambda * b.masses[j]);
    }
    // Columns are exact after the column block; check rows.
    violation = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < m; ++j) {
        const double s = f[i] + g[j] - c(i, j);
        if (s > 0) row += s;
      }
      violation = std::max(violation, std::abs(row / lambda - a.masses[i]));
    }
    if (violation <= options.tol) {
      result.converged = true;
      ++it;
      break;
    }
  }

  Eigen::MatrixXd plan(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i)
      plan(i, j) = std::max(0.0, f[i] + g[j] - c(i, j)) / lambda;
  round_to_feasible(plan, a.masses, b.masses);

  result.plan.coupling = plan;
  result.plan.row_marginal = a;
  result.plan.col_marginal = b;
  result.plan.regularization = lambda;
  result.plan.penalty = PenaltyKind::l2;
  result.transport_cost = (plan.array() * c.array()).sum();
  result.penalty_value = 0.5 * lambda * plan.squaredNorm();
  result.value = result.transport_cost + result.penalty_value;
  result.potential_row = f;
  result.potential_col = g;
  result.iterations = it;
  result.marginal_error = violation;
  return result;
}

}  // namespace cot
