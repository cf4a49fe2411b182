#pragma once

#include <optional>
#include <string_view>

#include "cvsep/states.hpp"

namespace cvsep {

/// Tripartite state families.
enum class Family {
  kGhzLike,        ///< correlated Gaussian, all coordinates tied to x_1
  kWLike,          ///< six shifted copies of the GHZ-like kernel
  kIndicator,      ///< flat amplitude on |x_1| < beta, |x_1 - x_j| < epsilon
  kAnnihilatedGhz, ///< GHZ-like kernel with one mode operator per subsystem
};

/// Operator applied per subsystem for kAnnihilatedGhz.
enum class ModeOperator {
  kPosition,  ///< multiplicative x_i prefactor
  kLadder,    ///< (x_i + d/dx_i) / sqrt(2)
};

struct FamilyParams {
  double sigma = 1.0;
  double epsilon = 1.0;
  double shift = 0.0;  ///< Delta
  double beta = 1.0;
  ModeOperator mode_operator = ModeOperator::kPosition;
};

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);
std::string_view to_string(ModeOperator op);
std::optional<ModeOperator> parse_mode_operator(std::string_view name);

/// exp(-x_1^2/(2 sigma) - ((x_1-x_2)^2 + (x_1-x_3)^2)/(2 epsilon)).
QuadraticExponent ghz_exponent(double sigma, double epsilon);

/// Pure part of the family member; throws kInvalidArgument for
/// non-positive sigma/epsilon/beta, negative shift, or a shift on ghz_like.
PureState build_family_state(Family family, const FamilyParams& params);

/// Gaussian noise for the Gaussian families, box noise for the indicator.
DiagonalNoise::Kind default_noise_kind(Family family);

}  // namespace cvsep
