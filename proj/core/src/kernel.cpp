#include "cvsep/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "cvsep/box_integral.hpp"
#include "cvsep/error.hpp"

namespace cvsep {

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

Box Box::centered(PointView c, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw Error(ErrorKind::kInvalidArgument, "box width must be positive");
  }
  Box box;
  for (double ci : c) {
    box.lo.push_back(ci - 0.5 * xi);
    box.hi.push_back(ci + 0.5 * xi);
  }
  return box;
}

Box intersect(const Box& a, const Box& b) {
  Box out;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const double lo = std::max(a.lo[i], b.lo[i]);
    const double hi = std::min(a.hi[i], b.hi[i]);
    out.lo.push_back(lo);
    out.hi.push_back(std::max(lo, hi));
  }
  return out;
}

CvState::CvState(PureState pure, DiagonalNoise noise, double p)
    : pure_(std::move(pure)), noise_(noise), p_(p), pure_norm_(0.0), n_(cvsep::dimension(pure_)) {
  if (!(p_ >= 0.0 && p_ <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "mixing weight p must lie in [0, 1]");
  }
  noise_.validate();
  pure_norm_ = normalization_constant(pure_);
  if (!(pure_norm_ > 0.0) || !std::isfinite(pure_norm_)) {
    throw Error(ErrorKind::kNonNormalizable, "pure part has zero or non-finite norm");
  }
}

double CvState::diag(PointView x) const {
  double value = 0.0;
  if (p_ > 0.0) {
    const double psi = eval_wavefunction(pure_, x);
    value += p_ * psi * psi / pure_norm_;
  } else if (static_cast<int>(x.size()) != n_) {
    throw Error(ErrorKind::kInvalidArgument, "point dimension mismatch");
  }
  if (p_ < 1.0) value += (1.0 - p_) * noise_.density(x);
  return value;
}

double CvState::offdiag(PointView x, PointView y) const {
  if (std::equal(x.begin(), x.end(), y.begin(), y.end())) {
    throw Error(ErrorKind::kInvalidArgument, "offdiag requires distinct points; use diag");
  }
  if (p_ == 0.0) return 0.0;
  return p_ * eval_wavefunction(pure_, x) * eval_wavefunction(pure_, y) / pure_norm_;
}

double CvState::pure_box_integral(const Box& box, const QuadratureOptions& options) const {
  EvaluationBudget budget(options.max_evaluations);
  return integrate_over_box(pure_, box, options, budget);
}

double CvState::box_element(const Box& a, const Box& b, const QuadratureOptions& options) const {
  if (a.n() != n_ || b.n() != n_) throw Error(ErrorKind::kInvalidArgument, "box dimension mismatch");
  const double va = a.volume();
  const double vb = b.volume();
  if (!(va > 0.0) || !(vb > 0.0)) throw Error(ErrorKind::kInvalidArgument, "degenerate box");
  const double scale = 1.0 / std::sqrt(va * vb);

  double value = 0.0;
  if (p_ > 0.0) {
    EvaluationBudget budget(options.max_evaluations);
    const double ia = integrate_over_box(pure_, a, options, budget);
    const bool same = a.lo == b.lo && a.hi == b.hi;
    const double ib = same ? ia : integrate_over_box(pure_, b, options, budget);
    value += p_ * ia * ib / pure_norm_;
  }
  if (p_ < 1.0) {
    const Box overlap = intersect(a, b);
    value += (1.0 - p_) * noise_.mass(overlap.lo, overlap.hi);
  }
  return scale * value;
}

void KernelMixture::add(double weight, std::shared_ptr<const DensityKernel> kernel) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw Error(ErrorKind::kInvalidArgument, "mixture weights must be non-negative");
  }
  if (!kernel) throw Error(ErrorKind::kInvalidArgument, "null kernel in mixture");
  if (!parts_.empty() && kernel->dimension() != dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "mixture components differ in dimension");
  }
  parts_.emplace_back(weight, std::move(kernel));
}

int KernelMixture::dimension() const {
  if (parts_.empty()) throw Error(ErrorKind::kInvalidArgument, "empty mixture");
  return parts_.front().second->dimension();
}

double KernelMixture::diag(PointView x) const {
  double v = 0.0;
  for (const auto& [w, k] : parts_) v += w * k->diag(x);
  return v;
}

double KernelMixture::offdiag(PointView x, PointView y) const {
  double v = 0.0;
  for (const auto& [w, k] : parts_) v += w * k->offdiag(x, y);
  return v;
}

double KernelMixture::box_element(const Box& a, const Box& b, const QuadratureOptions& options) const {
  double v = 0.0;
  for (const auto& [w, k] : parts_) v += w * k->box_element(a, b, options);
  return v;
}

}  // namespace cvsep
