#pragma once

#include "cvsep/kernel.hpp"
#include "cvsep/quadrature.hpp"
#include "cvsep/states.hpp"

namespace cvsep {

enum class BoxIntegrationPath {
  kAuto,
  /// Analytic integration of the subsystems attached to one anchor
  /// coordinate (error-function integrands), adaptive 1D outer integral.
  kStarReduction,
  /// Nested adaptive quadrature over all coordinates.
  kNested,
};

/// Integral of Psi over `box`. kAuto picks the star reduction when the
/// state's coupling structure allows it, otherwise nested quadrature.
double integrate_over_box(const PureState& state, const Box& box,
                          const QuadratureOptions& options, EvaluationBudget& budget,
                          BoxIntegrationPath path = BoxIntegrationPath::kAuto);

/// Anchor coordinate of a star-shaped quadratic form (no couplings between
/// non-anchor coordinates), or -1.
int star_anchor(const Eigen::MatrixXd& M);

}  // namespace cvsep
