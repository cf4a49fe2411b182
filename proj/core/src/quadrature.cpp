#include "cvsep/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cvsep/error.hpp"

namespace cvsep {

void EvaluationBudget::charge(std::size_t count) {
  used_ += count;
  if (used_ > limit_) {
    throw Error(ErrorKind::kNumericalFailure,
                "quadrature budget of " + std::to_string(limit_) + " integrand evaluations exhausted");
  }
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options, EvaluationBudget& budget) {
  if (a == b) return 0.0;
  auto counted = [&](double x) {
    budget.charge();
    return f(x);
  };
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      counted, a, b, options.max_depth, options.rel_tol, &error, &l1);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kNumericalFailure, "non-finite integral on [" + std::to_string(a) +
                                                  ", " + std::to_string(b) + "]");
  }
  const double allowed = 10.0 * options.rel_tol * l1 + std::numeric_limits<double>::min();
  if (error > allowed) {
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "]: error estimate "
        << error << " vs allowed " << allowed << " after " << budget.used() << " evaluations";
    throw Error(ErrorKind::kNumericalFailure, msg.str());
  }
  return value;
}

namespace {

double nested(const std::function<double(PointView)>& f, PointView lo, PointView hi,
              std::size_t axis, Point& x, const QuadratureOptions& options,
              EvaluationBudget& budget) {
  if (axis + 1 == lo.size()) {
    return integrate_adaptive(
        [&](double t) {
          x[axis] = t;
          return f(x);
        },
        lo[axis], hi[axis], options, budget);
  }
  QuadratureOptions inner = options;
  inner.rel_tol = std::max(options.rel_tol * 0.1, 1e-15);
  return integrate_adaptive(
      [&](double t) {
        x[axis] = t;
        return nested(f, lo, hi, axis + 1, x, inner, budget);
      },
      lo[axis], hi[axis], options, budget);
}

}  // namespace

double integrate_box_nested(const std::function<double(PointView)>& f, PointView lo,
                            PointView hi, const QuadratureOptions& options,
                            EvaluationBudget& budget) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "box bounds dimension mismatch");
  }
  Point x(lo.size(), 0.0);
  return nested(f, lo, hi, 0, x, options, budget);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints) {
  if (!(b > a)) return 0.0;
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  static const double kNode = std::sqrt(0.6);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double lo = std::max(a, breakpoints[i]);
    const double hi = std::min(b, breakpoints[i + 1]);
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    sum += half * (5.0 / 9.0 * f(mid - kNode * half) + 8.0 / 9.0 * f(mid) +
                   5.0 / 9.0 * f(mid + kNode * half));
  }
  return sum;
}

}  // namespace cvsep
