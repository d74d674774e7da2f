#include "cot/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cot {

namespace detail {

Eigen::VectorXd safe_log(const Eigen::VectorXd& masses) {
  Eigen::VectorXd out(masses.size());
  for (int i = 0; i < masses.size(); ++i)
    out[i] = masses[i] > 0 ? std::log(masses[i])
                           : -std::numeric_limits<double>::infinity();
  return out;
}

namespace {

// f_next_i = -lambda * LSE_j(log_b_j + (g_j - C_ij)/lambda)
void softmin_rows(const Eigen::MatrixXd& cost, const Eigen::VectorXd& g,
                  const Eigen::VectorXd& log_b, double lambda,
                  Eigen::MatrixXd& work, Eigen::VectorXd& f_next) {
  const Eigen::VectorXd t = (g + lambda * log_b) / lambda;
  work = (-cost / lambda).rowwise() + t.transpose();
  const Eigen::VectorXd row_max = work.rowwise().maxCoeff();
  work.colwise() -= row_max;
  work = work.array().exp();
  f_next = -lambda *
           (row_max.array() + work.rowwise().sum().array().log()).matrix();
}

void softmin_cols(const Eigen::MatrixXd& cost, const Eigen::VectorXd& f,
                  const Eigen::VectorXd& log_a, double lambda,
                  Eigen::MatrixXd& work, Eigen::VectorXd& g_next) {
  const Eigen::VectorXd t = (f + lambda * log_a) / lambda;
  work = (-cost / lambda).colwise() + t;
  const Eigen::RowVectorXd col_max = work.colwise().maxCoeff();
  work.rowwise() -= col_max;
  work = work.array().exp();
  g_next = -lambda * (col_max.transpose().array() +
                      work.colwise().sum().transpose().array().log())
                         .matrix();
}

// Realized row mass of the plan implied by (f, g) is a_i * exp((f_i -
// f_next_i)/lambda); deviation from a_i is the marginal violation.
double row_violation(const Eigen::VectorXd& a, const Eigen::VectorXd& f,
                     const Eigen::VectorXd& f_next, double lambda,
                     double* mass_out) {
  double viol = 0.0;
  double mass = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] <= 0) continue;
    const double ratio = std::exp((f[i] - f_next[i]) / lambda);
    mass += a[i] * ratio;
    viol = std::max(viol, a[i] * std::abs(ratio - 1.0));
  }
  if (mass_out) *mass_out = mass;
  return viol;
}

}  // namespace

SinkhornStatus entropic_potentials(const Eigen::MatrixXd& cost,
                                   const Eigen::VectorXd& a,
                                   const Eigen::VectorXd& log_a,
                                   const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& log_b, double lambda,
                                   const SinkhornOptions& options,
                                   Eigen::VectorXd& f, Eigen::VectorXd& g,
                                   Eigen::MatrixXd& work) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
  if (f.size() != cost.rows()) f = Eigen::VectorXd::Zero(cost.rows());
  if (g.size() != cost.cols()) g = Eigen::VectorXd::Zero(cost.cols());

  SinkhornStatus status;
  Eigen::VectorXd f_next(cost.rows());
  softmin_cols(cost, f, log_a, lambda, work, g);

  double mass = 1.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    softmin_rows(cost, g, log_b, lambda, work, f_next);
    status.marginal_error = row_violation(a, f, f_next, lambda, &mass);
    status.iterations = it;
    if (status.marginal_error <= options.tol) {
      status.converged = true;
      break;
    }
    f = f_next;
    softmin_cols(cost, f, log_a, lambda, work, g);
  }
  status.value = f.dot(a) + g.dot(b) - lambda * (mass - 1.0);
  return status;
}

SinkhornStatus symmetric_potentials(const Eigen::MatrixXd& cost,
                                    const Eigen::VectorXd& a,
                                    const Eigen::VectorXd& log_a, double lambda,
                                    const SinkhornOptions& options,
                                    Eigen::VectorXd& potential,
                                    Eigen::MatrixXd& work) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
  if (potential.size() != cost.rows())
    potential = Eigen::VectorXd::Zero(cost.rows());

  SinkhornStatus status;
  Eigen::VectorXd half(cost.rows());
  double mass = 1.0;
  for (int it = 1; it <= options.max_iter; ++it) {
    softmin_rows(cost, potential, log_a, lambda, work, half);
    status.marginal_error = row_violation(a, potential, half, lambda, &mass);
    status.iterations = it;
    if (status.marginal_error <= options.tol) {
      status.converged = true;
      break;
    }
    potential = 0.5 * (potential + half);
  }
  status.value = 2.0 * potential.dot(a) - lambda * (mass - 1.0);
  return status;
}

double entropic_dual_value(const Eigen::MatrixXd& cost,
                           const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           double lambda, const Eigen::VectorXd& f,
                           const Eigen::VectorXd& g) {
  double mass = 0.0;
  for (int j = 0; j < cost.cols(); ++j) {
    if (b[j] <= 0) continue;
    for (int i = 0; i < cost.rows(); ++i) {
      if (a[i] <= 0) continue;
      mass += std::exp((f[i] + g[j] - cost(i, j)) / lambda) * a[i] * b[j];
    }
  }
  return f.dot(a) + g.dot(b) - lambda * mass + lambda;
}

}  // namespace detail

namespace {

// Dense plan from converged potentials, projected onto the marginal polytope.
Eigen::MatrixXd recover_plan(const Eigen::MatrixXd& cost,
                             const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                             double lambda, const Eigen::VectorXd& f,
                             const Eigen::VectorXd& g) {
  Eigen::MatrixXd plan(cost.rows(), cost.cols());
  for (int j = 0; j < cost.cols(); ++j) {
    for (int i = 0; i < cost.rows(); ++i) {
      plan(i, j) = (a[i] > 0 && b[j] > 0)
                       ? std::exp((f[i] + g[j] - cost(i, j)) / lambda) * a[i] *
                             b[j]
                       : 0.0;
    }
  }
  round_to_feasible(plan, a, b);
  return plan;
}

double entropy_penalty(const Eigen::MatrixXd& plan, const Eigen::VectorXd& a,
                       const Eigen::VectorXd& b, double lambda) {
  double kl = 0.0;
  for (int j = 0; j < plan.cols(); ++j) {
    for (int i = 0; i < plan.rows(); ++i) {
      const double p = plan(i, j);
      if (p > 0) kl += p * (std::log(p) - std::log(a[i]) - std::log(b[j]));
    }
  }
  return lambda * kl;
}

void check_cost_family(const CostMatrix& ab, const CostMatrix& aa,
                       const CostMatrix& bb) {
  if (ab.metric != aa.metric || ab.metric != bb.metric)
    throw std::invalid_argument("cost matrices disagree on metric");
  if (ab.exponent != aa.exponent || ab.exponent != bb.exponent)
    throw std::invalid_argument("cost matrices disagree on exponent");
  if (aa.entries.rows() != ab.entries.rows() ||
      aa.entries.cols() != ab.entries.rows() ||
      bb.entries.rows() != ab.entries.cols() ||
      bb.entries.cols() != ab.entries.cols())
    throw std::invalid_argument("cost matrix dimensions are inconsistent");
}

}  // namespace

OtResult sinkhorn_ot(const CostMatrix& cost, const DiscreteMeasure& a,
                     const DiscreteMeasure& b, double lambda,
                     const SinkhornOptions& options) {
  if (lambda <= 0) throw std::invalid_argument("lambda must be > 0");
  if (!cost.entries.allFinite())
    throw std::invalid_argument("cost matrix has non-finite entries");
  if (a.size() != cost.entries.rows() || b.size() != cost.entries.cols())
    throw std::invalid_argument("marginals do not match cost dimensions");
  validate_measure(a);
  validate_measure(b);

  Eigen::VectorXd f, g;
  Eigen::MatrixXd work;
  const Eigen::VectorXd log_a = detail::safe_log(a.masses);
  const Eigen::VectorXd log_b = detail::safe_log(b.masses);
  const detail::SinkhornStatus status = detail::entropic_potentials(
      cost.entries, a.masses, log_a, b.masses, log_b, lambda, options, f, g,
      work);

  OtResult result;
  result.plan.coupling =
      recover_plan(cost.entries, a.masses, b.masses, lambda, f, g);
  result.plan.row_marginal = a;
  result.plan.col_marginal = b;
  result.plan.regularization = lambda;
  result.plan.penalty = PenaltyKind::entropy;
  result.transport_cost =
      (result.plan.coupling.array() * cost.entries.array()).sum();
  result.penalty_value =
      entropy_penalty(result.plan.coupling, a.masses, b.masses, lambda);
  result.value = result.transport_cost + result.penalty_value;
  result.potential_row = f;
  result.potential_col = g;
  result.iterations = status.iterations;
  result.converged = status.converged;
  result.marginal_error = status.marginal_error;
  return result;
}

double sinkhorn_divergence(const CostMatrix& cost_ab, const CostMatrix& cost_aa,
                           const CostMatrix& cost_bb, const DiscreteMeasure& a,
                           const DiscreteMeasure& b, double lambda,
                           const SinkhornOptions& options) {
  check_cost_family(cost_ab, cost_aa, cost_bb);
  validate_measure(a);
  validate_measure(b);

  Eigen::MatrixXd work;
  Eigen::VectorXd f, g, p_a, p_b;
  const Eigen::VectorXd log_a = detail::safe_log(a.masses);
  const Eigen::VectorXd log_b = detail::safe_log(b.masses);

  const auto cross = detail::entropic_potentials(
      cost_ab.entries, a.masses, log_a, b.masses, log_b, lambda, options, f, g,
      work);
  const auto self_a = detail::symmetric_potentials(
      cost_aa.entries, a.masses, log_a, lambda, options, p_a, work);
  const auto self_b = detail::symmetric_potentials(
      cost_bb.entries, b.masses, log_b, lambda, options, p_b, work);

  return cross.value - 0.5 * self_a.value - 0.5 * self_b.value;
}

double energy_distance(const CostMatrix& cost_ab, const CostMatrix& cost_aa,
                       const CostMatrix& cost_bb, const DiscreteMeasure& a,
                       const DiscreteMeasure& b) {
  check_cost_family(cost_ab, cost_aa, cost_bb);
  validate_measure(a);
  validate_measure(b);
  const double cross = a.masses.dot(cost_ab.entries * b.masses);
  const double self_a = a.masses.dot(cost_aa.entries * a.masses);
  const double self_b = b.masses.dot(cost_bb.entries * b.masses);
  return 2.0 * cross - self_a - self_b;
}

Eigen::MatrixXd barycentric_projection(const TransportPlan& plan,
                                       const Eigen::MatrixXd& row_values,
                                       ProjectionCost kind) {
  const int n = static_cast<int>(plan.coupling.rows());
  const int m = static_cast<int>(plan.coupling.cols());
  const int q = static_cast<int>(row_values.cols());
  if (row_values.rows() != n)
    throw std::invalid_argument("row values do not match plan rows");

  Eigen::MatrixXd out(m, q);
  const Eigen::VectorXd col_mass = plan.coupling.colwise().sum();
  for (int j = 0; j < m; ++j) {
    if (col_mass[j] <= 0)
      throw std::invalid_argument("zero column marginal at column " +
                                  std::to_string(j));
  }

  if (kind == ProjectionCost::squared_euclidean) {
    out = plan.coupling.transpose() * row_values;
    out.array().colwise() /= col_mass.array();
    return out;
  }

  // L1: coordinatewise weighted median per column.
  std::vector<int> order(n);
  for (int q_i = 0; q_i < q; ++q_i) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      return row_values(l, q_i) < row_values(r, q_i);
    });
    for (int j = 0; j < m; ++j) {
      const double half = 0.5 * col_mass[j];
      double acc = 0.0;
      double median = row_values(order.back(), q_i);
      for (const int i : order) {
        acc += plan.coupling(i, j);
        if (acc >= half) {
          median = row_values(i, q_i);
          break;
        }
      }
      out(j, q_i) = median;
    }
  }
  return out;
}

}  // namespace cot
