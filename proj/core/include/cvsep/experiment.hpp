#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvsep/criterion.hpp"
#include "cvsep/kernel.hpp"

namespace cvsep {

/// rho compressed onto span{|alpha_i>, |beta_i>} per subsystem.
///
/// Basis index bits: 0 = alpha (phi_1 box), 1 = beta (phi_2 box);
/// subsystem 0 is the most significant bit.
struct EffectiveQubitState {
  int n = 0;
  Eigen::MatrixXd matrix;
  double trace = 0.0;

  /// Throws kNumericalFailure unless symmetric, PSD to 1e-10 and trace <= 1 + 1e-10.
  void validate() const;
  static EffectiveQubitState from_matrix(Eigen::MatrixXd matrix);
};

EffectiveQubitState effective_qubit_state(const DensityKernel& rho, const Probe& box_probe,
                                          double tol = 1e-8);

/// Labels over {1,x,y,z}^n in lexicographic order of "1xyz", with
/// sigma_y = i|alpha><beta| - i|beta><alpha|.
struct ObservableExpansion {
  int n = 0;
  std::vector<std::pair<std::string, double>> labels;
  double trace = 0.0;
  double decomposed_lhs = 0.0;             ///< n = 3 only
  double decomposed_lhs_normalized = 0.0;  ///< decomposed_lhs / trace

  /// Throws kInvalidArgument for an unknown label.
  double at(std::string_view label) const;
};

inline constexpr std::string_view kPauliLabelConvention = "sigma_i ⊗ sigma_j ⊗ sigma_k";
inline constexpr std::string_view kSigmaYConvention = "sigma_y = i|alpha><beta| - i|beta><alpha|";

ObservableExpansion pauli_expectations(const EffectiveQubitState& eff);

/// The n = 3, k = 2 inequality written in local expectation values.
/// Throws kInconsistentTable for a missing label or a radicand below -1e-10.
double decomposed_lhs_n3k2(const ObservableExpansion& table);

/// Normalized-box scalar products entering the criterion.
struct BoxScalarProducts {
  struct Diagonal {
    std::string label;  ///< basis pattern over {a, b}, e.g. "bab"
    Point center;
    double value = 0.0;
  };
  double offdiag = 0.0;
  std::vector<Diagonal> diagonal;
  std::string path;  ///< "star-reduction" or "nested"
};

/// `nested` forces the generic nested quadrature; otherwise states with a
/// star-shaped coupling (GHZ-like) reduce to 1D Gaussian x Erf integrals.
BoxScalarProducts box_scalar_products(const CvState& rho, const Probe& box_probe,
                                      double tol = 1e-8, bool nested = false);

struct UncertaintyBudget {
  double o = 0.0;
  double zeta = 0.0;
  double xi_exact = 0.0;
  double xi_bound = 0.0;
};

/// Gaussian propagation through the criterion: every one of the 2k factors of
/// each partition term carries relative uncertainty zeta, the off-diagonal
/// term absolute uncertainty o.
UncertaintyBudget propagate_uncertainty(const CriterionResult& result, double o, double zeta,
                                        int n, int k);

/// Every scalar product multiplied by tau in [0, 1].
CriterionResult efficiency_scale(const CriterionResult& result, double tau);

}  // namespace cvsep
