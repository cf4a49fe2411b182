#include "cvsep/reference.hpp"

#include <cmath>
#include <numbers>

namespace cvsep::reference {

namespace {
const double kPi32 = std::pow(std::numbers::pi, 1.5);
}

double ghz_lhs_k2(double sigma, double epsilon, double x0) {
  const double x2 = x0 * x0;
  const double n = kPi32 * epsilon * std::sqrt(sigma);
  return std::exp(-x2 / sigma) * (1.0 - std::exp(-8.0 * x2 / epsilon) - 2.0 * std::exp(-4.0 * x2 / epsilon)) / n;
}

double ghz_epsilon_threshold(double x0) { return 4.0 * x0 * x0 / std::log(1.0 + std::numbers::sqrt2); }

double literature_w_normalization(double s, double e, double d) {
  const double d2 = d * d;
  const double sum = std::exp(-2.0 * d2 / e) + 2.0 * std::exp(-d2 / (2.0 * e)) +
                     2.0 * std::exp(-d2 * (e + 5.0 * s) / (e * s)) +
                     4.0 * std::exp(-d2 * (e + 5.0 * s) / (4.0 * e * s)) +
                     2.0 * std::exp(-d2 * (e + 9.0 * s) / (4.0 * e * s)) +
                     2.0 * std::exp(-d2 * (e + 18.0 * s) / (4.0 * e * s)) +
                     2.0 * std::numbers::sqrt2 * std::exp((s - 2.0 * d * (d * e + 6.0 * s)) / (8.0 * e * s));
  return 2.0 * kPi32 * e * std::sqrt(s) * sum;
}

double literature_annihilated_normalization(double s, double e) {
  return 0.125 * kPi32 * e * std::pow(s, 1.5) * (e * e + 6.0 * e * s + 15.0 * s * s);
}

double indicator_normalization(double epsilon, double beta) { return 8.0 * epsilon * epsilon * beta; }

double indicator_lhs_inner(double p, double epsilon, double beta) {
  return p / indicator_normalization(epsilon, beta);
}

double indicator_lhs_outer(double p, double epsilon, double beta, double delta) {
  return p / indicator_normalization(epsilon, beta) - 3.0 * (1.0 - p) / (8.0 * delta * delta * delta);
}

double indicator_lhs_outer_literature(double p, double epsilon, double beta, double delta) {
  return p / indicator_normalization(epsilon, beta) - (1.0 - p) / (8.0 * delta * delta * delta);
}

double indicator_p_threshold(double epsilon, double beta, double delta) {
  const double a = 3.0 * epsilon * epsilon * beta;
  return a / (a + delta * delta * delta);
}

double indicator_p_threshold_literature(double epsilon, double beta, double delta) {
  const double a = epsilon * epsilon * beta;
  return a / (a + delta * delta * delta);
}

double literature_partition_count(int n, int k) {
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::pow(i, n - 1) / (std::tgamma(i) * std::tgamma(k - i + 1));
  }
  return sum;
}

}  // namespace cvsep::reference
