#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "cvsep/point.hpp"
#include "cvsep/quadrature.hpp"
#include "cvsep/states.hpp"

namespace cvsep {

/// Axis-aligned product box prod_i [lo_i, hi_i].
struct Box {
  Point lo;
  Point hi;

  int n() const { return static_cast<int>(lo.size()); }
  double volume() const;
  /// Box of width xi centred at c in every subsystem.
  static Box centered(PointView c, double xi);
};

/// Intersection of two boxes; empty axes get hi == lo.
Box intersect(const Box& a, const Box& b);

/// Matrix elements of a position-space density operator.
///
/// Sharp elements follow the density convention: diagonal elements of
/// position-diagonal parts are read as density values. Box elements use
/// normalized box functions (amplitude 1/sqrt(width) per subsystem).
class DensityKernel {
 public:
  virtual ~DensityKernel() = default;

  virtual int dimension() const = 0;
  virtual double diag(PointView x) const = 0;
  /// Requires x != y; position-diagonal parts contribute nothing.
  virtual double offdiag(PointView x, PointView y) const = 0;
  virtual double box_element(const Box& a, const Box& b, const QuadratureOptions& options) const = 0;
};

/// rho = p |omega><omega| / <omega|omega> + (1 - p) rho_noise.
class CvState final : public DensityKernel {
 public:
  CvState(PureState pure, DiagonalNoise noise, double p);

  int dimension() const override { return n_; }
  double diag(PointView x) const override;
  double offdiag(PointView x, PointView y) const override;
  double box_element(const Box& a, const Box& b, const QuadratureOptions& options) const override;

  double p() const noexcept { return p_; }
  double pure_norm() const noexcept { return pure_norm_; }
  const PureState& pure() const noexcept { return pure_; }
  const DiagonalNoise& noise() const noexcept { return noise_; }

  /// Integral of Psi over a box; exposed for the experiment pipeline.
  double pure_box_integral(const Box& box, const QuadratureOptions& options) const;

 private:
  PureState pure_;
  DiagonalNoise noise_;
  double p_;
  double pure_norm_;
  int n_;
};

/// Non-negative combination sum_i w_i rho_i of kernels on the same space.
class KernelMixture final : public DensityKernel {
 public:
  KernelMixture() = default;
  void add(double weight, std::shared_ptr<const DensityKernel> kernel);

  int dimension() const override;
  double diag(PointView x) const override;
  double offdiag(PointView x, PointView y) const override;
  double box_element(const Box& a, const Box& b, const QuadratureOptions& options) const override;

 private:
  std::vector<std::pair<double, std::shared_ptr<const DensityKernel>>> parts_;
};

/// p = 1 shortcut.
inline CvState pure_state(PureState pure) {
  return CvState(std::move(pure), DiagonalNoise{}, 1.0);
}

}  // namespace cvsep
