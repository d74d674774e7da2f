#pragma once

#include <Eigen/Dense>

#include "cot/cost.hpp"
#include "cot/measure.hpp"

namespace cot {

enum class PenaltyKind { none, entropy, l2 };

// Coupling with prescribed marginals.
struct TransportPlan {
  Eigen::MatrixXd coupling;  // n x m, nonnegative
  DiscreteMeasure row_marginal;
  DiscreteMeasure col_marginal;
  double regularization = 0.0;
  PenaltyKind penalty = PenaltyKind::none;

  double max_marginal_violation() const;
};

struct OtResult {
  double value = 0.0;           // transport term plus penalty at the plan
  double transport_cost = 0.0;  // <C, P> alone
  double penalty_value = 0.0;
  TransportPlan plan;
  Eigen::VectorXd potential_row;  // dual potential per row atom
  Eigen::VectorXd potential_col;
  int iterations = 0;
  bool converged = false;
  double marginal_error = 0.0;  // before rounding
};

// Projects a near-feasible nonnegative matrix onto the transport polytope:
// rescale rows down to the row marginal, then columns, then spread the
// residual mass as a rank-one correction. Marginals become exact up to
// floating point.
void round_to_feasible(Eigen::MatrixXd& coupling, const Eigen::VectorXd& row,
                       const Eigen::VectorXd& col);

}  // namespace cot
