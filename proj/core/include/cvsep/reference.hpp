#pragma once

#include <cstdint>

// Closed forms and published anchor values the engine is compared against.
// Nothing in the engine depends on these.
namespace cvsep::reference {

/// Sharp GHZ-probe lhs of the pure GHZ-like state (k = 2):
///   e^{-x0^2/sigma} (1 - e^{-8x0^2/eps} - 2 e^{-4x0^2/eps}) / (pi^{3/2} eps sqrt(sigma)).
double ghz_lhs_k2(double sigma, double epsilon, double x0);

/// Zero of ghz_lhs_k2 in epsilon: 4 x0^2 / ln(1 + sqrt 2).
double ghz_epsilon_threshold(double x0);

/// Published epsilon threshold at sigma = 1, x0 = 1.
inline constexpr double kLiteratureEpsilonThreshold = 4.648;
/// Published range of the optimal x0.
inline constexpr double kLiteratureX0Lo = 0.7;
inline constexpr double kLiteratureX0Hi = 1.2;

/// Printed normalization of the six-term family (reproduced verbatim; it
/// does not match the norm of the state, see docs).
double literature_w_normalization(double sigma, double epsilon, double shift);
/// Printed normalization of the annihilated GHZ-like state.
double literature_annihilated_normalization(double sigma, double epsilon);

/// Indicator state: N_1 = 8 eps^2 beta.
double indicator_normalization(double epsilon, double beta);
/// lhs for eps/2 < beta and delta < beta.
double indicator_lhs_inner(double p, double epsilon, double beta);
/// lhs for eps/2 < beta <= delta counting all three partitions literally.
double indicator_lhs_outer(double p, double epsilon, double beta, double delta);
/// Printed variant with a single noise term.
double indicator_lhs_outer_literature(double p, double epsilon, double beta, double delta);
double indicator_p_threshold(double epsilon, double beta, double delta);
double indicator_p_threshold_literature(double epsilon, double beta, double delta);

/// Printed alternating sum for the number of k-partitions, with its summation
/// index read as i.
double literature_partition_count(int n, int k);

}  // namespace cvsep::reference
