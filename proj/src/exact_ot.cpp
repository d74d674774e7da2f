#include "cot/exact_ot.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cot {

namespace {

struct BasisCell {
  int row;
  int col;
  double flow;
};

// Node ids: rows are 0..n-1, columns are n..n+m-1.
struct BasisGraph {
  int n, m;
  std::vector<std::vector<int>> adjacency;  // node -> incident basis cell ids

  BasisGraph(int n_, int m_) : n(n_), m(m_), adjacency(n_ + m_) {}

  void rebuild(const std::vector<BasisCell>& basis) {
    for (auto& list : adjacency) list.clear();
    for (int c = 0; c < static_cast<int>(basis.size()); ++c) {
      adjacency[basis[c].row].push_back(c);
      adjacency[n + basis[c].col].push_back(c);
    }
  }
};

}  // namespace

OtResult exact_ot(const CostMatrix& cost, const DiscreteMeasure& a,
                  const DiscreteMeasure& b) {
  const int n = static_cast<int>(cost.entries.rows());
  const int m = static_cast<int>(cost.entries.cols());
  if (a.size() != n || b.size() != m)
    throw std::invalid_argument("marginals do not match cost dimensions");
  validate_measure(a);
  validate_measure(b);
  const Eigen::MatrixXd& c = cost.entries;

  OtResult result;
  result.plan.row_marginal = a;
  result.plan.col_marginal = b;
  result.plan.regularization = 0.0;
  result.plan.penalty = PenaltyKind::none;

  // Degenerate cost: any feasible plan is optimal; return the product
  // coupling.
  if (c.maxCoeff() == 0.0 && c.minCoeff() == 0.0) {
    result.plan.coupling = a.masses * b.masses.transpose();
    result.potential_row = Eigen::VectorXd::Zero(n);
    result.potential_col = Eigen::VectorXd::Zero(m);
    result.converged = true;
    return result;
  }

  // Northwest-corner initial basis: exactly n+m-1 cells forming a spanning
  // tree, possibly with zero flows.
  std::vector<BasisCell> basis;
  basis.reserve(n + m - 1);
  {
    Eigen::VectorXd ra = a.masses;
    Eigen::VectorXd cb = b.masses;
    int i = 0, j = 0;
    while (true) {
      const double flow = std::max(0.0, std::min(ra[i], cb[j]));
      basis.push_back({i, j, flow});
      ra[i] -= flow;
      cb[j] -= flow;
      if (i == n - 1 && j == m - 1) break;
      if (ra[i] <= cb[j] && i < n - 1) {
        ++i;
      } else if (j < m - 1) {
        ++j;
      } else {
        ++i;
      }
    }
  }

  BasisGraph graph(n, m);
  Eigen::VectorXd u(n), v(m);
  std::vector<int> parent_cell(n + m), order(n + m);

  const double cost_scale = c.cwiseAbs().maxCoeff();
  const double tol = 1e-12 * (1.0 + cost_scale);
  const int max_pivots = 2000 + 50 * n * m;
  const int bland_after = 20 * (n + m) + 200;

  int pivot = 0;
  for (; pivot < max_pivots; ++pivot) {
    // Duals from the basis tree: u_i + v_j = c_ij on basis cells.
    graph.rebuild(basis);
    std::fill(parent_cell.begin(), parent_cell.end(), -1);
    int head = 0, tail = 0;
    order[tail++] = 0;
    parent_cell[0] = -2;  // root marker
    u[0] = 0.0;
    while (head < tail) {
      const int node = order[head++];
      for (const int cell : graph.adjacency[node]) {
        const BasisCell& bc = basis[cell];
        const int other = (node == bc.row) ? graph.n + bc.col : bc.row;
        if (parent_cell[other] != -1) continue;
        parent_cell[other] = cell;
        if (other >= n)
          v[other - n] = c(bc.row, bc.col) - u[bc.row];
        else
          u[other] = c(bc.row, bc.col) - v[node - n];
        order[tail++] = other;
      }
    }

    // Entering cell: most negative reduced cost; Bland's rule (first
    // eligible in row-major order) once pivots stall, which keeps the
    // method finite under degeneracy.
    const bool bland = pivot > bland_after;
    int enter_i = -1, enter_j = -1;
    double best = -tol;
    for (int i = 0; i < n && !(bland && enter_i >= 0); ++i) {
      for (int j = 0; j < m; ++j) {
        const double rc = c(i, j) - u[i] - v[j];
        if (rc < best) {
          best = rc;
          enter_i = i;
          enter_j = j;
          if (bland) break;
        }
      }
    }
    if (enter_i < 0) break;  // optimal

    // Unique tree path from the entering column back to the entering row;
    // cells along it alternate -theta, +theta starting at the column end.
    std::fill(parent_cell.begin(), parent_cell.end(), -1);
    head = 0;
    tail = 0;
    order[tail++] = n + enter_j;
    parent_cell[n + enter_j] = -2;
    while (head < tail && parent_cell[enter_i] == -1) {
      const int node = order[head++];
      for (const int cell : graph.adjacency[node]) {
        const BasisCell& bc = basis[cell];
        const int other = (node == bc.row) ? graph.n + bc.col : bc.row;
        if (parent_cell[other] != -1) continue;
        parent_cell[other] = cell;
        order[tail++] = other;
      }
    }
    if (parent_cell[enter_i] == -1)
      throw std::runtime_error("transportation basis lost connectivity");

    std::vector<int> minus_cells, plus_cells;
    {
      int node = enter_i;
      bool minus = true;  // first edge out of the entering row carries -theta
      while (parent_cell[node] != -2) {
        const int cell = parent_cell[node];
        (minus ? minus_cells : plus_cells).push_back(cell);
        const BasisCell& bc = basis[cell];
        node = (node == bc.row) ? graph.n + bc.col : bc.row;
        minus = !minus;
      }
    }

    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (const int cell : minus_cells) {
      const BasisCell& bc = basis[cell];
      if (bc.flow < theta ||
          (bc.flow == theta && leave >= 0 &&
           (bc.row < basis[leave].row ||
            (bc.row == basis[leave].row && bc.col < basis[leave].col)))) {
        theta = bc.flow;
        leave = cell;
      }
    }
    if (leave < 0) throw std::runtime_error("transportation cycle not found");

    for (const int cell : minus_cells) basis[cell].flow -= theta;
    for (const int cell : plus_cells) basis[cell].flow += theta;
    basis[leave] = {enter_i, enter_j, theta};
  }
  if (pivot >= max_pivots)
    throw std::runtime_error("transportation simplex did not terminate");

  result.plan.coupling = Eigen::MatrixXd::Zero(n, m);
  for (const BasisCell& bc : basis)
    result.plan.coupling(bc.row, bc.col) += std::max(0.0, bc.flow);
  round_to_feasible(result.plan.coupling, a.masses, b.masses);

  result.transport_cost = (result.plan.coupling.array() * c.array()).sum();
  result.value = result.transport_cost;
  result.potential_row = u;
  result.potential_col = v;
  result.iterations = pivot;
  result.converged = true;
  result.marginal_error = result.plan.max_marginal_violation();
  return result;
}

}  // namespace cot
