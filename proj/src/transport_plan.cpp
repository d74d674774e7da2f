#include "cot/transport_plan.hpp"

namespace cot {

double TransportPlan::max_marginal_violation() const {
  const Eigen::VectorXd row_err =
      (coupling.rowwise().sum() - row_marginal.masses).cwiseAbs();
  const Eigen::VectorXd col_err =
      (coupling.colwise().sum().transpose() - col_marginal.masses).cwiseAbs();
  return std::max(row_err.maxCoeff(), col_err.maxCoeff());
}

void round_to_feasible(Eigen::MatrixXd& coupling, const Eigen::VectorXd& row,
                       const Eigen::VectorXd& col) {
  const int n = static_cast<int>(coupling.rows());
  const int m = static_cast<int>(coupling.cols());

  Eigen::VectorXd row_sum = coupling.rowwise().sum();
  for (int i = 0; i < n; ++i) {
    const double scale =
        row_sum[i] > 0 ? std::min(1.0, row[i] / row_sum[i]) : 0.0;
    coupling.row(i) *= scale;
  }
  Eigen::VectorXd col_sum = coupling.colwise().sum();
  for (int j = 0; j < m; ++j) {
    const double scale =
        col_sum[j] > 0 ? std::min(1.0, col[j] / col_sum[j]) : 0.0;
    coupling.col(j) *= scale;
  }
  Eigen::VectorXd row_def = row - coupling.rowwise().sum();
  Eigen::VectorXd col_def = col - coupling.colwise().sum().transpose();
  row_def = row_def.cwiseMax(0.0);
  col_def = col_def.cwiseMax(0.0);
  const double deficit = row_def.sum();
  if (deficit > 0) {
    coupling.noalias() += row_def * col_def.transpose() / deficit;
  }
}

}  // namespace cot
