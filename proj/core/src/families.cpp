#include "cvsep/families.hpp"

#include <array>
#include <cmath>

#include "cvsep/error.hpp"

namespace cvsep {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kGhzLike: return "ghz_like";
    case Family::kWLike: return "w_like";
    case Family::kIndicator: return "indicator";
    case Family::kAnnihilatedGhz: return "annihilated_ghz";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kGhzLike, Family::kWLike, Family::kIndicator, Family::kAnnihilatedGhz}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view to_string(ModeOperator op) {
  return op == ModeOperator::kPosition ? "position" : "ladder";
}

std::optional<ModeOperator> parse_mode_operator(std::string_view name) {
  if (name == "position") return ModeOperator::kPosition;
  if (name == "ladder") return ModeOperator::kLadder;
  return std::nullopt;
}

QuadraticExponent ghz_exponent(double sigma, double epsilon) {
  if (!(sigma > 0.0) || !(epsilon > 0.0) || !std::isfinite(sigma) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::kInvalidArgument, "sigma and epsilon must be positive");
  }
  const double s = 1.0 / sigma;
  const double e = 1.0 / epsilon;
  QuadraticExponent q;
  q.M.resize(3, 3);
  q.M << s + 2.0 * e, -e, -e,
         -e, e, 0.0,
         -e, 0.0, e;
  q.b = Eigen::VectorXd::Zero(3);
  q.c = 0.0;
  return q;
}

PureState build_family_state(Family family, const FamilyParams& params) {
  switch (family) {
    case Family::kGhzLike: {
      if (params.shift != 0.0) {
        throw Error(ErrorKind::kInvalidArgument, "ghz_like has no shift; use w_like");
      }
      GaussianSumState g;
      g.base = ghz_exponent(params.sigma, params.epsilon);
      g.terms.push_back({1.0, Point(3, 0.0)});
      return g;
    }
    case Family::kWLike: {
      const double d = params.shift;
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw Error(ErrorKind::kInvalidArgument, "shift must be non-negative");
      }
      // Ket displacements |x_1 + a, x_2 + b, x_3 + c>; the amplitude at y is
      // f(y - displacement).
      const std::array<std::array<double, 3>, 6> kets{{{-d, 0, d}, {0, d, -d}, {d, -d, 0},
                                                       {d, 0, -d}, {0, -d, d}, {-d, d, 0}}};
      GaussianSumState g;
      g.base = ghz_exponent(params.sigma, params.epsilon);
      for (const auto& k : kets) g.terms.push_back({1.0, Point{-k[0], -k[1], -k[2]}});
      return g;
    }
    case Family::kIndicator: {
      if (!(params.beta > 0.0) || !(params.epsilon > 0.0) || !std::isfinite(params.beta) ||
          !std::isfinite(params.epsilon)) {
        throw Error(ErrorKind::kInvalidArgument, "beta and epsilon must be positive");
      }
      IndicatorState s;
      s.dims = 3;
      s.constraints = {{0, -1, 0.0, params.beta},
                       {1, 0, 0.0, params.epsilon},
                       {2, 0, 0.0, params.epsilon}};
      return s;
    }
    case Family::kAnnihilatedGhz: {
      PureState state = build_family_state(Family::kGhzLike, {params.sigma, params.epsilon, 0.0,
                                                              params.beta, params.mode_operator});
      for (int mode = 2; mode >= 0; --mode) {
        state = params.mode_operator == ModeOperator::kPosition ? apply_position(state, mode)
                                                                : annihilate(state, mode);
      }
      return state;
    }
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown family");
}

DiagonalNoise::Kind default_noise_kind(Family family) {
  return family == Family::kIndicator ? DiagonalNoise::Kind::kBox : DiagonalNoise::Kind::kGaussian;
}

}  // namespace cvsep
