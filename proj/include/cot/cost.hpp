#pragma once

#include <optional>

#include <Eigen/Dense>

namespace cot {

enum class Metric { euclidean, standardized_euclidean, mahalanobis, manhattan };

const char* metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// Per-column location/scale used by standardized_euclidean, plus the pooled
// covariance consumed by mahalanobis.
struct Standardizer {
  Eigen::VectorXd location;
  Eigen::VectorXd scale;
  Eigen::MatrixXd covariance;
};

// Location = column means, scale = column standard deviations, covariance =
// sample covariance, all over the pooled rows.
Standardizer pooled_standardizer(const Eigen::MatrixXd& pooled_rows);

struct CostMatrix {
  Eigen::MatrixXd entries;  // n_rows x n_cols, entries = d(x_i, x_j)^p
  Metric metric = Metric::euclidean;
  double exponent = 2.0;  // p >= 1
};

// Pairwise costs d(x_i, x_j)^p between the rows of points_a and points_b.
// standardized_euclidean rescales columns by the standardizer first;
// mahalanobis whitens with the standardizer covariance (throws if singular
// rather than regularizing silently).
CostMatrix build_cost(const Eigen::MatrixXd& points_a,
                      const Eigen::MatrixXd& points_b, Metric metric, double p,
                      const std::optional<Standardizer>& standardizer = {});

double mean_cost(const CostMatrix& cost);

}  // namespace cot
