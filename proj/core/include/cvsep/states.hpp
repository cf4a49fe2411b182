#pragma once

#include <variant>
#include <vector>

#include "cvsep/gaussian.hpp"
#include "cvsep/point.hpp"
#include "cvsep/polynomial.hpp"

namespace cvsep {

struct GaussianTerm {
  double weight = 1.0;
  Point shift;
};

/// Psi(x) = sum_j w_j * base(x + s_j).
struct GaussianSumState {
  QuadraticExponent base;
  std::vector<GaussianTerm> terms;

  int n() const { return base.n(); }
  void validate() const;
};

struct PolyTerm {
  Polynomial poly;
  Point shift;
};

/// Psi(x) = sum_j P_j(x) * base(x + s_j), total degree of each P_j <= 6.
struct PolyGaussianState {
  QuadraticExponent base;
  std::vector<PolyTerm> terms;

  static constexpr int kMaxDegree = 6;

  int n() const { return base.n(); }
  void validate() const;
  static PolyGaussianState from(const GaussianSumState& state);
};

/// Theta(w - |x_axis - d|) when other < 0, else Theta(w - |x_axis - x_other - d|).
struct IndicatorConstraint {
  int axis = 0;
  int other = -1;
  double center = 0.0;
  double half_width = 1.0;
};

/// Constant amplitude on the region cut out by the constraints. Only star
/// graphs are supported: one anchored axis, every other axis tied to the
/// anchor by exactly one pair constraint.
struct IndicatorState {
  int dims = 0;
  std::vector<IndicatorConstraint> constraints;
  double amplitude = 1.0;

  int n() const { return dims; }
  /// Throws kInvalidArgument for malformed constraints and
  /// kUnsupportedStructure for non-star graphs.
  void validate() const;
  int anchor() const;
  /// Pair constraint tying `axis` to the anchor, written as
  /// x_axis in (x_anchor + offset - w, x_anchor + offset + w).
  struct Link {
    double offset;
    double half_width;
  };
  Link link(int axis) const;
  const IndicatorConstraint& anchor_constraint() const;
};

using PureState = std::variant<GaussianSumState, PolyGaussianState, IndicatorState>;

int dimension(const PureState& state);

/// Unnormalized amplitude Psi(x).
double eval_wavefunction(const PureState& state, PointView x);

/// <omega|omega> of the unnormalized kernel, in closed form.
double normalization_constant(const PureState& state);

/// Ladder operator a_i = (x_i + d/dx_i)/sqrt(2) applied symbolically.
PolyGaussianState annihilate(const PureState& state, int mode);

/// Position quadrature x_i applied as a multiplicative prefactor.
PolyGaussianState apply_position(const PureState& state, int mode);

/// Position-diagonal classical noise with normalized product density g.
struct DiagonalNoise {
  enum class Kind { kGaussian, kBox };

  Kind kind = Kind::kGaussian;
  /// Gaussian: variance parameter in exp(-x^2 / (2 delta)); box: half-width.
  double width = 1.0;

  void validate() const;
  double density(PointView x) const;
  /// Integral of g over the product box [lo, hi].
  double mass(PointView lo, PointView hi) const;
};

}  // namespace cvsep
