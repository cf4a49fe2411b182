#include "cvsep/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "cvsep/error.hpp"

namespace cvsep {

void QuadraticExponent::validate() const {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "quadratic form must be square and non-empty");
  }
  if (M.rows() > static_cast<Eigen::Index>(kMaxModes)) {
    throw Error(ErrorKind::kSizeLimit, "at most 6 subsystems are supported");
  }
  if (b.size() != M.rows()) {
    throw Error(ErrorKind::kInvalidArgument, "linear term dimension mismatch");
  }
  if ((M - M.transpose()).norm() != 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "quadratic form is not symmetric");
  }
  if (!M.allFinite() || !b.allFinite() || !std::isfinite(c)) {
    throw Error(ErrorKind::kInvalidArgument, "non-finite exponent coefficients");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "quadratic form is not positive semidefinite");
  }
}

double QuadraticExponent::exponent(PointView x) const {
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  return -0.5 * v.dot(M * v) + b.dot(v) + c;
}

double QuadraticExponent::operator()(PointView x) const { return std::exp(exponent(x)); }

QuadraticExponent QuadraticExponent::shifted(PointView shift) const {
  const Eigen::Map<const Eigen::VectorXd> s(shift.data(), static_cast<Eigen::Index>(shift.size()));
  QuadraticExponent out;
  out.M = M;
  out.b = b - M * s;
  out.c = c + b.dot(s) - 0.5 * s.dot(M * s);
  return out;
}

GaussianMoments::GaussianMoments(const Eigen::MatrixXd& A, const Eigen::VectorXd& h, double c) {
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::kNonNormalizable, "Gaussian weight is not positive definite");
  }
  const Eigen::MatrixXd L = llt.matrixL();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    if (!(L(i, i) > 0.0)) throw Error(ErrorKind::kNonNormalizable, "singular Gaussian weight");
    log_det += 2.0 * std::log(L(i, i));
  }
  covariance_ = llt.solve(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
  mean_ = llt.solve(h);
  const double n = static_cast<double>(A.rows());
  log_partition_ = 0.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * log_det +
                   0.5 * h.dot(mean_) + c;
}

double GaussianMoments::partition() const { return std::exp(log_partition_); }

double GaussianMoments::expectation(const Monomial& m) const {
  if (auto it = cache_.find(m); it != cache_.end()) return it->second;
  int axis = -1;
  for (int i = 0; i < n(); ++i) {
    if (m.exponents[static_cast<std::size_t>(i)] > 0) {
      axis = i;
      break;
    }
  }
  double value = 1.0;
  if (axis >= 0) {
    Monomial rest = m;
    --rest.exponents[static_cast<std::size_t>(axis)];
    value = mean_(axis) * expectation(rest);
    for (int j = 0; j < n(); ++j) {
      const int e = rest.exponents[static_cast<std::size_t>(j)];
      if (e == 0) continue;
      Monomial lower = rest;
      --lower.exponents[static_cast<std::size_t>(j)];
      value += covariance_(axis, j) * e * expectation(lower);
    }
  }
  cache_.emplace(m, value);
  return value;
}

double GaussianMoments::integral(const Polynomial& p) const {
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * expectation(m);
  return partition() * sum;
}

}  // namespace cvsep
