#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cvsep/point.hpp"

namespace cvsep {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  std::size_t max_evaluations = 1'000'000;
  unsigned max_depth = 24;
};

/// Counts integrand evaluations against a hard budget.
class EvaluationBudget {
 public:
  explicit EvaluationBudget(std::size_t limit) : limit_(limit) {}

  /// Throws kNumericalFailure once the budget is exhausted.
  void charge(std::size_t count = 1);
  std::size_t used() const noexcept { return used_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b] with an
/// embedded error estimate. Throws kNumericalFailure when the estimate
/// does not reach rel_tol.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options, EvaluationBudget& budget);

/// Nested adaptive quadrature over the box prod_i [lo_i, hi_i].
double integrate_box_nested(const std::function<double(PointView)>& f, PointView lo,
                            PointView hi, const QuadratureOptions& options,
                            EvaluationBudget& budget);

/// Integral of a piecewise-polynomial function (degree <= 5 between
/// consecutive breakpoints) with 3-point Gauss-Legendre per piece; exact
/// up to rounding for such integrands.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints);

}  // namespace cvsep
