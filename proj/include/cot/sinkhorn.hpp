#pragma once

#include "cot/transport_plan.hpp"

namespace cot {

struct SinkhornOptions {
  double tol = 1e-9;    // max absolute marginal violation
  int max_iter = 10000;
};

// Entropy-penalized OT in the KL-to-product form, solved by log-domain dual
// ascent on the potentials. The reported value is the transport term plus the
// entropy penalty evaluated at the recovered plan. Non-convergence returns the
// best iterate with converged = false.
OtResult sinkhorn_ot(const CostMatrix& cost, const DiscreteMeasure& a,
                     const DiscreteMeasure& b, double lambda,
                     const SinkhornOptions& options = {});

// Debiased divergence OT(a,b) - OT(a,a)/2 - OT(b,b)/2. Self-terms use the
// symmetric fixed-point. Throws if the three cost matrices disagree on
// metric/exponent or dimensions.
double sinkhorn_divergence(const CostMatrix& cost_ab, const CostMatrix& cost_aa,
                           const CostMatrix& cost_bb, const DiscreteMeasure& a,
                           const DiscreteMeasure& b, double lambda,
                           const SinkhornOptions& options = {});

// Mass-weighted energy distance 2*E_ab - E_aa - E_bb, where E_xy is the
// weighted mean cost between measures x and y.
double energy_distance(const CostMatrix& cost_ab, const CostMatrix& cost_aa,
                       const CostMatrix& cost_bb, const DiscreteMeasure& a,
                       const DiscreteMeasure& b);

enum class ProjectionCost { squared_euclidean, l1 };

// Plan-conditional summary of row values per column: weighted mean under a
// squared-Euclidean cost, coordinatewise weighted median under L1. Throws on
// zero column marginals.
Eigen::MatrixXd barycentric_projection(const TransportPlan& plan,
                                       const Eigen::MatrixXd& row_values,
                                       ProjectionCost kind);

namespace detail {

struct SinkhornStatus {
  double value = 0.0;  // dual objective = primal value at convergence
  int iterations = 0;
  bool converged = false;
  double marginal_error = 0.0;
};

// Potential-only entropic solve with warm start; f and g are updated in
// place. `work` is an n x m scratch matrix reused across calls.
SinkhornStatus entropic_potentials(const Eigen::MatrixXd& cost,
                                   const Eigen::VectorXd& a,
                                   const Eigen::VectorXd& log_a,
                                   const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& log_b, double lambda,
                                   const SinkhornOptions& options,
                                   Eigen::VectorXd& f, Eigen::VectorXd& g,
                                   Eigen::MatrixXd& work);

// Symmetric self-term solve for OT(a, a) on a square cost; single potential.
// Value of the self-term is status.value.
SinkhornStatus symmetric_potentials(const Eigen::MatrixXd& cost,
                                    const Eigen::VectorXd& a,
                                    const Eigen::VectorXd& log_a, double lambda,
                                    const SinkhornOptions& options,
                                    Eigen::VectorXd& potential,
                                    Eigen::MatrixXd& work);

// Dual objective at (f, g); weak duality tests compare this to the primal.
double entropic_dual_value(const Eigen::MatrixXd& cost,
                           const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           double lambda, const Eigen::VectorXd& f,
                           const Eigen::VectorXd& g);

Eigen::VectorXd safe_log(const Eigen::VectorXd& masses);

}  // namespace detail

}  // namespace cot
