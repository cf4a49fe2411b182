#pragma once

#include <functional>
#include <optional>

#include "cvsep/criterion.hpp"
#include "cvsep/kernel.hpp"

namespace cvsep {

struct ProbeOptimum {
  Probe probe;
  double x0 = 0.0;  ///< NaN for general coordinate-descent probes
  CriterionResult result;
};

struct ProbeSearch {
  ProbeForm form = ProbeForm::kGhz;
  double shift = 0.0;
  double lo = 0.1;
  double hi = 3.0;
  double x_tolerance = 1e-6;
  int grid_points = 64;
  /// Box probes of this width instead of sharp ones.
  std::optional<double> box_width;
  double quadrature_tol = 1e-8;
};

/// Maximizes the criterion lhs over the one-parameter probe family x0:
/// 64-point grid, then golden-section refinement around the best point.
/// Deterministic. Throws kNoValidProbe when no grid point is a valid probe.
ProbeOptimum optimize_probe(const DensityKernel& rho, int k, const ProbeSearch& search);

/// Coordinate descent over all 2n probe coordinates, each refined by golden
/// section within +-radius of its current value. Starts from `start`.
ProbeOptimum optimize_probe_general(const DensityKernel& rho, int k, const Probe& start,
                                    double radius = 1.0, int sweeps = 8,
                                    double x_tolerance = 1e-6);

/// Maximizer of a unimodal f on [lo, hi] to |dx| < tol.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

struct ThresholdResult {
  double value = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  int iterations = 0;
};

/// Bisection for the sign change of f on [lo, hi] to interval width tol.
/// Throws kBracketError when f(lo) and f(hi) have the same sign.
ThresholdResult find_threshold(const std::function<double(double)>& f, double lo, double hi,
                               double tol = 1e-6);

}  // namespace cvsep
