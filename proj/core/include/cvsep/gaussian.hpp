#pragma once

#include <map>

#include <Eigen/Dense>

#include "cvsep/point.hpp"
#include "cvsep/polynomial.hpp"

namespace cvsep {

/// exp(-1/2 x^T M x + b^T x + c) with M symmetric positive semidefinite.
struct QuadraticExponent {
  Eigen::MatrixXd M;
  Eigen::VectorXd b;
  double c = 0.0;

  int n() const { return static_cast<int>(M.rows()); }

  /// Throws kInvalidArgument unless M is exactly symmetric with
  /// eigenvalues >= -1e-12 and b matches its dimension.
  void validate() const;

  double exponent(PointView x) const;
  double operator()(PointView x) const;

  /// Same Gaussian written in the unshifted variable: f(x + shift) as
  /// exp(-1/2 x^T M x + h^T x + c').
  QuadraticExponent shifted(PointView shift) const;
};

/// Moments of the (unnormalized) Gaussian weight exp(-1/2 x^T A x + h^T x + c)
/// over R^n. A must be positive definite.
///
/// Non-centred moments use the Stein recursion
///   E[x_i m(x)] = mu_i E[m] + sum_j Sigma_ij E[d_j m],
/// memoized per monomial. Instances are not thread-safe.
class GaussianMoments {
 public:
  GaussianMoments(const Eigen::MatrixXd& A, const Eigen::VectorXd& h, double c = 0.0);

  int n() const { return static_cast<int>(mean_.size()); }
  double log_partition() const { return log_partition_; }
  double partition() const;
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  double expectation(const Monomial& m) const;
  double integral(const Monomial& m) const { return partition() * expectation(m); }
  double integral(const Polynomial& p) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  double log_partition_ = 0.0;
  mutable std::map<Monomial, double> cache_;
};

}  // namespace cvsep
