#include "cot/cost.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cot {

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::standardized_euclidean: return "standardized_euclidean";
    case Metric::mahalanobis: return "mahalanobis";
    case Metric::manhattan: return "manhattan";
  }
  return "unknown";
}

Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "standardized_euclidean") return Metric::standardized_euclidean;
  if (name == "mahalanobis") return Metric::mahalanobis;
  if (name == "manhattan") return Metric::manhattan;
  throw std::invalid_argument("unknown metric: " + name);
}

Standardizer pooled_standardizer(const Eigen::MatrixXd& pooled_rows) {
  const int n = static_cast<int>(pooled_rows.rows());
  if (n < 2) throw std::invalid_argument("standardizer needs >= 2 rows");
  Standardizer s;
  s.location = pooled_rows.colwise().mean();
  Eigen::MatrixXd centered = pooled_rows.rowwise() - s.location.transpose();
  s.covariance = centered.transpose() * centered / double(n - 1);
  s.scale = s.covariance.diagonal().array().sqrt();
  return s;
}

namespace {

Eigen::MatrixXd whitening_transform(const Eigen::MatrixXd& covariance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance);
  const double max_eig = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(max_eig, 1.0)) {
    throw std::invalid_argument(
        "mahalanobis covariance is singular or not positive definite");
  }
  Eigen::VectorXd inv_sqrt = es.eigenvalues().array().rsqrt();
  return es.eigenvectors() * inv_sqrt.asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

CostMatrix build_cost(const Eigen::MatrixXd& points_a,
                      const Eigen::MatrixXd& points_b, Metric metric, double p,
                      const std::optional<Standardizer>& standardizer) {
  if (points_a.cols() != points_b.cols())
    throw std::invalid_argument("point sets differ in column dimension");
  if (p < 1.0) throw std::invalid_argument("cost exponent p must be >= 1");
  if (!points_a.allFinite() || !points_b.allFinite())
    throw std::invalid_argument("non-finite input points");

  Eigen::MatrixXd a = points_a;
  Eigen::MatrixXd b = points_b;

  if (metric == Metric::standardized_euclidean) {
    if (!standardizer)
      throw std::invalid_argument("standardized_euclidean needs a standardizer");
    if ((standardizer->scale.array() <= 0).any())
      throw std::invalid_argument("standardizer scale entries must be > 0");
    if (standardizer->scale.size() != a.cols())
      throw std::invalid_argument("standardizer dimension mismatch");
    a = (a.rowwise() - standardizer->location.transpose()).array().rowwise() /
        standardizer->scale.transpose().array();
    b = (b.rowwise() - standardizer->location.transpose()).array().rowwise() /
        standardizer->scale.transpose().array();
  } else if (metric == Metric::mahalanobis) {
    if (!standardizer)
      throw std::invalid_argument("mahalanobis needs a standardizer");
    if (standardizer->covariance.rows() != a.cols())
      throw std::invalid_argument("covariance dimension mismatch");
    const Eigen::MatrixXd w = whitening_transform(standardizer->covariance);
    a = a * w;
    b = b * w;
  }

  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(b.rows());
  CostMatrix cost;
  cost.metric = metric;
  cost.exponent = p;
  cost.entries.resize(n, m);

  const bool manhattan = (metric == Metric::manhattan);
  for (int j = 0; j < m; ++j) {
    const Eigen::RowVectorXd bj = b.row(j);
    for (int i = 0; i < n; ++i) {
      const double dist = manhattan ? (a.row(i) - bj).cwiseAbs().sum()
                                    : (a.row(i) - bj).norm();
      cost.entries(i, j) = (p == 2.0)   ? dist * dist
                           : (p == 1.0) ? dist
                                        : std::pow(dist, p);
    }
  }
  return cost;
}

double mean_cost(const CostMatrix& cost) { return cost.entries.mean(); }

}  // namespace cot
