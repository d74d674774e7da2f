#pragma once

#include "cot/sinkhorn.hpp"
#include "cot/transport_plan.hpp"

namespace cot {

// L2-penalized OT: min <C,P> + (lambda/2)*sum P_ij^2 over the transport
// polytope, solved by exact alternating maximization of the smooth dual.
// Plans may have exactly-zero entries. The value satisfies
//   OT <= value <= OT + (lambda/2) * min(|a|^2, |b|^2).
OtResult l2_ot(const CostMatrix& cost, const DiscreteMeasure& a,
               const DiscreteMeasure& b, double lambda,
               const SinkhornOptions& options = {});

namespace detail {

// Dual objective f.a + g.b - (1/(2*lambda)) * sum ((f_i+g_j-C_ij)_+)^2.
double quadratic_dual_value(const Eigen::MatrixXd& cost,
                            const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                            double lambda, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& g);

// Exact solution t of sum_j (t - thresholds_j)_+ = budget (budget >= 0).
// For budget == 0 returns min(thresholds).
double piecewise_linear_root(std::vector<double>& thresholds, double budget);

}  // namespace detail

}  // namespace cot
