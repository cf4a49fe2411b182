#include "cvsep/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvsep/detail/erf.hpp"
#include "cvsep/error.hpp"

namespace cvsep {

namespace {

void check_dimension(int n, PointView x) {
  if (static_cast<int>(x.size()) != n) {
    throw Error(ErrorKind::kInvalidArgument, "point has dimension " + std::to_string(x.size()) +
                                                 ", state has " + std::to_string(n));
  }
}

void check_shift(int n, const Point& shift) {
  if (static_cast<int>(shift.size()) != n) {
    throw Error(ErrorKind::kInvalidArgument, "shift vector dimension mismatch");
  }
  for (double s : shift) {
    if (!std::isfinite(s)) throw Error(ErrorKind::kInvalidArgument, "non-finite shift");
  }
}

PolyGaussianState as_poly(const PureState& state) {
  if (const auto* g = std::get_if<GaussianSumState>(&state)) return PolyGaussianState::from(*g);
  if (const auto* p = std::get_if<PolyGaussianState>(&state)) return *p;
  throw Error(ErrorKind::kUnsupportedStructure,
              "mode operators act on Gaussian-based states only");
}

void check_mode(const PolyGaussianState& state, int mode) {
  if (mode < 0 || mode >= state.n()) {
    throw Error(ErrorKind::kInvalidArgument, "mode index " + std::to_string(mode) + " out of range");
  }
}

void check_degree(const Polynomial& p) {
  if (p.degree() > PolyGaussianState::kMaxDegree) {
    throw Error(ErrorKind::kUnsupportedStructure, "polynomial prefactor exceeds degree 6");
  }
}

}  // namespace

void GaussianSumState::validate() const {
  base.validate();
  if (terms.empty()) throw Error(ErrorKind::kInvalidArgument, "Gaussian sum without terms");
  bool any_nonzero = false;
  for (const auto& t : terms) {
    check_shift(n(), t.shift);
    if (!std::isfinite(t.weight)) throw Error(ErrorKind::kInvalidArgument, "non-finite weight");
    any_nonzero = any_nonzero || t.weight != 0.0;
  }
  if (!any_nonzero) throw Error(ErrorKind::kInvalidArgument, "all term weights are zero");
}

void PolyGaussianState::validate() const {
  base.validate();
  if (terms.empty()) throw Error(ErrorKind::kInvalidArgument, "polynomial state without terms");
  for (const auto& t : terms) {
    check_shift(n(), t.shift);
    if (t.poly.n() != n()) throw Error(ErrorKind::kInvalidArgument, "polynomial arity mismatch");
    check_degree(t.poly);
  }
}

PolyGaussianState PolyGaussianState::from(const GaussianSumState& state) {
  PolyGaussianState out;
  out.base = state.base;
  for (const auto& t : state.terms) {
    out.terms.push_back({Polynomial::constant(state.n(), t.weight), t.shift});
  }
  return out;
}

void IndicatorState::validate() const {
  if (dims < 1 || dims > static_cast<int>(kMaxModes)) {
    throw Error(ErrorKind::kInvalidArgument, "indicator state needs 1..6 subsystems");
  }
  if (!(amplitude != 0.0 && std::isfinite(amplitude))) {
    throw Error(ErrorKind::kInvalidArgument, "indicator amplitude must be finite and non-zero");
  }
  int singles = 0;
  for (const auto& c : constraints) {
    if (c.axis < 0 || c.axis >= dims || c.other >= dims || c.other == c.axis) {
      throw Error(ErrorKind::kInvalidArgument, "indicator constraint axes out of range");
    }
    if (!(c.half_width > 0.0) || !std::isfinite(c.half_width) || !std::isfinite(c.center)) {
      throw Error(ErrorKind::kInvalidArgument, "indicator half-widths must be positive");
    }
    if (c.other < 0) ++singles;
  }
  if (singles != 1) {
    throw Error(ErrorKind::kUnsupportedStructure, "indicator needs exactly one anchored axis");
  }
  const int a = anchor();
  std::vector<int> links(static_cast<std::size_t>(dims), 0);
  for (const auto& c : constraints) {
    if (c.other < 0) continue;
    if (c.axis != a && c.other != a) {
      throw Error(ErrorKind::kUnsupportedStructure, "indicator constraint between non-anchor axes");
    }
    ++links[static_cast<std::size_t>(c.axis == a ? c.other : c.axis)];
  }
  for (int i = 0; i < dims; ++i) {
    if (i != a && links[static_cast<std::size_t>(i)] != 1) {
      throw Error(ErrorKind::kUnsupportedStructure,
                  "axis " + std::to_string(i) + " must be tied to the anchor exactly once");
    }
  }
}

int IndicatorState::anchor() const { return anchor_constraint().axis; }

const IndicatorConstraint& IndicatorState::anchor_constraint() const {
  for (const auto& c : constraints) {
    if (c.other < 0) return c;
  }
  throw Error(ErrorKind::kUnsupportedStructure, "indicator has no anchored axis");
}

IndicatorState::Link IndicatorState::link(int axis) const {
  const int a = anchor();
  for (const auto& c : constraints) {
    if (c.other < 0) continue;
    if (c.axis == axis && c.other == a) return {c.center, c.half_width};
    if (c.axis == a && c.other == axis) return {-c.center, c.half_width};
  }
  throw Error(ErrorKind::kUnsupportedStructure, "axis " + std::to_string(axis) + " is not linked");
}

int dimension(const PureState& state) {
  return std::visit([](const auto& s) { return s.n(); }, state);
}

double eval_wavefunction(const PureState& state, PointView x) {
  check_dimension(dimension(state), x);
  if (const auto* g = std::get_if<GaussianSumState>(&state)) {
    Point y(x.size());
    double sum = 0.0;
    for (const auto& t : g->terms) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + t.shift[i];
      sum += t.weight * g->base(y);
    }
    return sum;
  }
  if (const auto* p = std::get_if<PolyGaussianState>(&state)) {
    Point y(x.size());
    double sum = 0.0;
    for (const auto& t : p->terms) {
      if (t.poly.is_zero()) continue;
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + t.shift[i];
      sum += t.poly.evaluate(x) * p->base(y);
    }
    return sum;
  }
  const auto& ind = std::get<IndicatorState>(state);
  for (const auto& c : ind.constraints) {
    const double u = x[static_cast<std::size_t>(c.axis)] -
                     (c.other < 0 ? 0.0 : x[static_cast<std::size_t>(c.other)]) - c.center;
    if (!(std::abs(u) < c.half_width)) return 0.0;
  }
  return ind.amplitude;
}

double normalization_constant(const PureState& state) {
  if (const auto* ind = std::get_if<IndicatorState>(&state)) {
    ind->validate();
    double volume = 1.0;
    for (const auto& c : ind->constraints) volume *= 2.0 * c.half_width;
    return ind->amplitude * ind->amplitude * volume;
  }
  if (const auto* g = std::get_if<GaussianSumState>(&state)) g->validate();
  const PolyGaussianState poly = as_poly(state);
  poly.validate();

  std::vector<QuadraticExponent> shifted;
  shifted.reserve(poly.terms.size());
  for (const auto& t : poly.terms) shifted.push_back(poly.base.shifted(t.shift));
  const Eigen::MatrixXd A = 2.0 * poly.base.M;

  double total = 0.0;
  for (std::size_t j = 0; j < poly.terms.size(); ++j) {
    if (poly.terms[j].poly.is_zero()) continue;
    for (std::size_t l = j; l < poly.terms.size(); ++l) {
      if (poly.terms[l].poly.is_zero()) continue;
      const GaussianMoments moments(A, shifted[j].b + shifted[l].b, shifted[j].c + shifted[l].c);
      const double value = moments.integral(poly.terms[j].poly * poly.terms[l].poly);
      total += (j == l ? 1.0 : 2.0) * value;
    }
  }
  return total;
}

PolyGaussianState annihilate(const PureState& state, int mode) {
  PolyGaussianState in = as_poly(state);
  check_mode(in, mode);
  const int n = in.n();
  std::vector<double> linear(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) linear[static_cast<std::size_t>(l)] = (l == mode ? 1.0 : 0.0) - in.base.M(mode, l);

  PolyGaussianState out;
  out.base = in.base;
  for (const auto& t : in.terms) {
    const Eigen::Map<const Eigen::VectorXd> s(t.shift.data(), n);
    const double c0 = in.base.b(mode) - (in.base.M * s)(mode);
    Polynomial next = t.poly.times_linear(c0, linear);
    next += t.poly.derivative(mode);
    next *= 1.0 / std::numbers::sqrt2;
    check_degree(next);
    out.terms.push_back({std::move(next), t.shift});
  }
  return out;
}

PolyGaussianState apply_position(const PureState& state, int mode) {
  PolyGaussianState in = as_poly(state);
  check_mode(in, mode);
  PolyGaussianState out;
  out.base = in.base;
  for (const auto& t : in.terms) {
    Polynomial next = t.poly.times_coordinate(mode);
    check_degree(next);
    out.terms.push_back({std::move(next), t.shift});
  }
  return out;
}

void DiagonalNoise::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorKind::kInvalidArgument, "noise width must be positive");
  }
}

double DiagonalNoise::density(PointView x) const {
  double g = 1.0;
  if (kind == Kind::kGaussian) {
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * width);
    double exponent = 0.0;
    for (double xi : x) {
      g *= norm;
      exponent -= xi * xi / (2.0 * width);
    }
    return g * std::exp(exponent);
  }
  for (double xi : x) {
    if (!(std::abs(xi) < width)) return 0.0;
    g /= 2.0 * width;
  }
  return g;
}

double DiagonalNoise::mass(PointView lo, PointView hi) const {
  double m = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(hi[i] > lo[i])) return 0.0;
    if (kind == Kind::kGaussian) {
      const double s = std::sqrt(2.0 * width);
      m *= 0.5 * detail::erf_diff(lo[i] / s, hi[i] / s);
    } else {
      const double overlap = std::min(hi[i], width) - std::max(lo[i], -width);
      if (!(overlap > 0.0)) return 0.0;
      m *= overlap / (2.0 * width);
    }
  }
  return m;
}

}  // namespace cvsep
