#pragma once

#include <string_view>
#include <vector>

#include "cvsep/kernel.hpp"
#include "cvsep/point.hpp"
#include "cvsep/setpart.hpp"

namespace cvsep {

/// Fully separable two-copy test state |phi_1> (x) |phi_2>.
///
/// Sharp probes are position eigenstates; box probes are normalized box
/// functions of width xi centred at the given coordinates.
struct Probe {
  enum class Kind { kSharp, kBox };

  Kind kind = Kind::kSharp;
  Point phi1;
  Point phi2;
  double xi = 0.0;

  /// Throws kInvalidProbe unless phi1[i] != phi2[i] for every subsystem.
  static Probe sharp(Point phi1, Point phi2);
  /// Throws kInvalidProbe unless the boxes of each subsystem are disjoint.
  static Probe box(Point phi1, Point phi2, double xi);

  int n() const { return static_cast<int>(phi1.size()); }
  void validate() const;
  /// Same centres, sharp.
  Probe as_sharp() const;
};

std::string_view to_string(Probe::Kind kind);

enum class Verdict { kViolated, kNotViolated };
std::string_view to_string(Verdict verdict);

/// lhs must exceed this to count as a violation.
inline constexpr double kDecisionTolerance = 1e-12;

Verdict decide(double lhs, double tolerance = kDecisionTolerance);

struct PartitionTerm {
  SetPartition partition;
  double value = 0.0;
};

struct CriterionResult {
  double offdiag_term = 0.0;
  std::vector<PartitionTerm> partition_terms;
  double lhs = 0.0;
  int k = 0;
  Verdict verdict = Verdict::kNotViolated;
  Probe::Kind probe_kind = Probe::Kind::kSharp;

  double partition_sum() const;
};

/// (prod_i x_i)^(1/(2k)) over the 2k diagonal elements of one partition.
/// Exact zero if any factor is zero; log-domain when a factor is < 1e-100.
double geometric_partition_term(std::span<const double> diagonal_values, int k);

/// Left-hand side of the k-separability inequality for a sharp probe:
///   |<phi_1|rho|phi_2>| - sum_partitions prod_blocks (<chi|rho|chi><chi'|rho|chi'>)^(1/2k).
/// A violation (lhs > 1e-12) certifies that the state is not k-separable.
CriterionResult criterion_lhs(const DensityKernel& rho, const Probe& probe, int k);

/// Same inequality for a box probe; every scalar product is an integral of
/// the kernel against normalized boxes, computed to relative tolerance `tol`.
CriterionResult criterion_lhs_box(const DensityKernel& rho, const Probe& probe, int k,
                                  double tol = 1e-8);

/// Dispatches on probe.kind.
CriterionResult evaluate_criterion(const DensityKernel& rho, const Probe& probe, int k,
                                   double tol = 1e-8);

enum class ProbeForm {
  kGhz,  ///< (x0, x0, x0) vs (-x0, -x0, -x0)
  kW,    ///< (x0+D, x0, x0-D) vs (-x0-D, -x0+D, -x0)
};

std::string_view to_string(ProbeForm form);

Probe build_probe(ProbeForm form, double x0, double shift = 0.0);
Probe build_box_probe(ProbeForm form, double x0, double shift, double xi);

}  // namespace cvsep
