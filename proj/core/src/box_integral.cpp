#include "cvsep/box_integral.hpp"

#include <cmath>
#include <numbers>

#include "cvsep/detail/erf.hpp"
#include "cvsep/error.hpp"

namespace cvsep {

int star_anchor(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    bool star = true;
    for (Eigen::Index i = 0; i < n && star; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j && i != r && j != r && M(i, j) != 0.0) {
          star = false;
          break;
        }
      }
    }
    if (star) return static_cast<int>(r);
  }
  return -1;
}

namespace {

/// Scaled truncated moments int_a^b t^m exp(-alpha (t - mu)^2) dt, m = 0..max_m.
void truncated_moments(double a, double b, double alpha, double mu, int max_m,
                       std::array<double, PolyGaussianState::kMaxDegree + 1>& out) {
  std::array<double, PolyGaussianState::kMaxDegree + 1> centred{};
  const double root = std::sqrt(alpha);
  const double ua = a - mu;
  const double ub = b - mu;
  const double ea = std::exp(-alpha * ua * ua);
  const double eb = std::exp(-alpha * ub * ub);
  centred[0] = 0.5 * std::sqrt(std::numbers::pi) / root * detail::erf_diff(root * ua, root * ub);
  double pa = 1.0;  // ua^(j-1)
  double pb = 1.0;
  for (int j = 1; j <= max_m; ++j) {
    const double prev2 = j >= 2 ? (j - 1) * centred[static_cast<std::size_t>(j - 2)] : 0.0;
    centred[static_cast<std::size_t>(j)] = (prev2 - (pb * eb - pa * ea)) / (2.0 * alpha);
    pa *= ua;
    pb *= ub;
  }
  for (int m = 0; m <= max_m; ++m) {
    // (mu + u)^m expanded binomially.
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      sum += binom * std::pow(mu, m - j) * centred[static_cast<std::size_t>(j)];
      binom = binom * (m - j) / (j + 1);
    }
    out[static_cast<std::size_t>(m)] = sum;
  }
}

struct StarTerm {
  Polynomial poly;
  QuadraticExponent exponent;  // in the unshifted variable x
  int degree;
};

double star_reduction(const PolyGaussianState& state, const Box& box, int anchor,
                      const QuadratureOptions& options, EvaluationBudget& budget) {
  const int n = state.n();
  const Eigen::MatrixXd& M = state.base.M;
  for (int i = 0; i < n; ++i) {
    if (i != anchor && !(M(i, i) > 0.0)) {
      throw Error(ErrorKind::kUnsupportedStructure, "free coordinate in star reduction");
    }
  }
  std::vector<StarTerm> terms;
  for (const auto& t : state.terms) {
    if (t.poly.is_zero()) continue;
    terms.push_back({t.poly, state.base.shifted(t.shift), t.poly.degree()});
  }
  if (terms.empty()) return 0.0;

  std::array<std::array<double, PolyGaussianState::kMaxDegree + 1>, kMaxModes> moments{};
  auto integrand = [&](double xr) {
    double total = 0.0;
    for (const auto& term : terms) {
      const auto& h = term.exponent.b;
      double log_scale = -0.5 * M(anchor, anchor) * xr * xr + h(anchor) * xr + term.exponent.c;
      for (int i = 0; i < n; ++i) {
        if (i == anchor) continue;
        const double alpha = 0.5 * M(i, i);
        const double beta = h(i) - M(i, anchor) * xr;
        const double mu = beta / (2.0 * alpha);
        log_scale += alpha * mu * mu;
        truncated_moments(box.lo[static_cast<std::size_t>(i)], box.hi[static_cast<std::size_t>(i)],
                          alpha, mu, term.degree, moments[static_cast<std::size_t>(i)]);
      }
      double value = 0.0;
      for (const auto& [mono, coeff] : term.poly.terms()) {
        double v = coeff * std::pow(xr, mono.exponents[static_cast<std::size_t>(anchor)]);
        for (int i = 0; i < n; ++i) {
          if (i == anchor) continue;
          v *= moments[static_cast<std::size_t>(i)][mono.exponents[static_cast<std::size_t>(i)]];
        }
        value += v;
      }
      total += std::exp(log_scale) * value;
    }
    return total;
  };
  const auto a = static_cast<std::size_t>(anchor);
  return integrate_adaptive(integrand, box.lo[a], box.hi[a], options, budget);
}

double indicator_exact(const IndicatorState& state, const Box& box) {
  state.validate();
  const int a = state.anchor();
  const auto& anchored = state.anchor_constraint();
  const double lo = std::max(box.lo[static_cast<std::size_t>(a)], anchored.center - anchored.half_width);
  const double hi = std::min(box.hi[static_cast<std::size_t>(a)], anchored.center + anchored.half_width);
  if (!(hi > lo)) return 0.0;

  struct Overlap {
    double lo, hi, offset, w;
  };
  std::vector<Overlap> parts;
  std::vector<double> kinks;
  for (int i = 0; i < state.n(); ++i) {
    if (i == a) continue;
    const auto link = state.link(i);
    const Overlap o{box.lo[static_cast<std::size_t>(i)], box.hi[static_cast<std::size_t>(i)],
                    link.offset, link.half_width};
    parts.push_back(o);
    for (double edge : {o.lo, o.hi}) {
      kinks.push_back(edge - o.offset - o.w);
      kinks.push_back(edge - o.offset + o.w);
    }
  }
  auto integrand = [&](double x) {
    double v = 1.0;
    for (const auto& o : parts) {
      const double len = std::min(o.hi, x + o.offset + o.w) - std::max(o.lo, x + o.offset - o.w);
      if (!(len > 0.0)) return 0.0;
      v *= len;
    }
    return v;
  };
  return state.amplitude * integrate_piecewise(integrand, lo, hi, kinks);
}

}  // namespace

double integrate_over_box(const PureState& state, const Box& box, const QuadratureOptions& options,
                          EvaluationBudget& budget, BoxIntegrationPath path) {
  const int n = dimension(state);
  if (box.n() != n || static_cast<int>(box.hi.size()) != n) {
    throw Error(ErrorKind::kInvalidArgument, "box dimension does not match state");
  }
  for (int i = 0; i < n; ++i) {
    if (!(box.hi[static_cast<std::size_t>(i)] >= box.lo[static_cast<std::size_t>(i)])) {
      throw Error(ErrorKind::kInvalidArgument, "box with hi < lo");
    }
  }
  if (path != BoxIntegrationPath::kNested) {
    if (const auto* ind = std::get_if<IndicatorState>(&state)) return indicator_exact(*ind, box);
    const PolyGaussianState poly = std::holds_alternative<GaussianSumState>(state)
                                       ? PolyGaussianState::from(std::get<GaussianSumState>(state))
                                       : std::get<PolyGaussianState>(state);
    const int anchor = star_anchor(poly.base.M);
    bool usable = anchor >= 0;
    for (int i = 0; usable && i < n; ++i) usable = i == anchor || poly.base.M(i, i) > 0.0;
    if (usable) return star_reduction(poly, box, anchor, options, budget);
    if (path == BoxIntegrationPath::kStarReduction) {
      throw Error(ErrorKind::kUnsupportedStructure, "quadratic form is not star shaped");
    }
  }
  return integrate_box_nested([&](PointView x) { return eval_wavefunction(state, x); }, box.lo,
                              box.hi, options, budget);
}

}  // namespace cvsep
