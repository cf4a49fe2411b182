#include "cvsep/experiment.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "cvsep/box_integral.hpp"
#include "cvsep/error.hpp"
#include "cvsep/setpart.hpp"

namespace cvsep {

namespace {

constexpr double kPsdTolerance = 1e-10;

Box basis_box(const Probe& probe, unsigned bits) {
  const int n = probe.n();
  Point c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool beta = (bits >> (n - 1 - i)) & 1u;
    c[static_cast<std::size_t>(i)] = beta ? probe.phi2[static_cast<std::size_t>(i)]
                                          : probe.phi1[static_cast<std::size_t>(i)];
  }
  return Box::centered(c, probe.xi);
}

void require_box(const Probe& probe) {
  if (probe.kind != Probe::Kind::kBox) throw Error(ErrorKind::kInvalidProbe, "a box probe is required");
  probe.validate();
}

// Single-subsystem Pauli element <r|sigma|c> in the {alpha, beta} basis.
std::complex<double> pauli_element(char op, unsigned r, unsigned c) {
  using namespace std::complex_literals;
  switch (op) {
    case '1': return r == c ? 1.0 : 0.0;
    case 'x': return r != c ? 1.0 : 0.0;
    case 'y':
      if (r == c) return 0.0;
      return r == 0 ? 1.0i : -1.0i;
    case 'z': return r == c ? (r == 0 ? 1.0 : -1.0) : 0.0;
  }
  return 0.0;
}

}  // namespace

void EffectiveQubitState::validate() const {
  const auto dim = Eigen::Index{1} << n;
  if (n < 1 || n > static_cast<int>(kMaxModes) || matrix.rows() != dim || matrix.cols() != dim) {
    throw Error(ErrorKind::kInvalidArgument, "effective state must be 2^n x 2^n");
  }
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > kPsdTolerance) {
    throw Error(ErrorKind::kNumericalFailure, "effective state is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTolerance) {
    throw Error(ErrorKind::kNumericalFailure, "effective state is not positive semidefinite");
  }
  if (trace > 1.0 + kPsdTolerance) {
    throw Error(ErrorKind::kNumericalFailure, "effective state trace exceeds 1");
  }
}

EffectiveQubitState EffectiveQubitState::from_matrix(Eigen::MatrixXd matrix) {
  EffectiveQubitState eff;
  if (matrix.rows() < 2) throw Error(ErrorKind::kInvalidArgument, "effective state too small");
  eff.n = static_cast<int>(std::lround(std::log2(static_cast<double>(matrix.rows()))));
  eff.trace = matrix.trace();
  eff.matrix = std::move(matrix);
  eff.validate();
  return eff;
}

EffectiveQubitState effective_qubit_state(const DensityKernel& rho, const Probe& box_probe, double tol) {
  require_box(box_probe);
  if (box_probe.n() != rho.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "probe and state dimensions differ");
  }
  QuadratureOptions options;
  options.rel_tol = tol;
  const int n = box_probe.n();
  const unsigned dim = 1u << n;
  Eigen::MatrixXd m(dim, dim);
  std::vector<Box> boxes;
  for (unsigned b = 0; b < dim; ++b) boxes.push_back(basis_box(box_probe, b));
  for (unsigned r = 0; r < dim; ++r) {
    for (unsigned c = r; c < dim; ++c) {
      m(r, c) = m(c, r) = rho.box_element(boxes[r], boxes[c], options);
    }
  }
  EffectiveQubitState eff;
  eff.n = n;
  eff.trace = m.trace();
  eff.matrix = std::move(m);
  eff.validate();
  return eff;
}

double ObservableExpansion::at(std::string_view label) const {
  for (const auto& [l, v] : labels) {
    if (l == label) return v;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown Pauli label '" + std::string(label) + "'");
}

ObservableExpansion pauli_expectations(const EffectiveQubitState& eff) {
  static constexpr std::array<char, 4> kOps{'1', 'x', 'y', 'z'};
  const int n = eff.n;
  const unsigned dim = 1u << n;
  ObservableExpansion out;
  out.n = n;
  out.trace = eff.trace;
  std::string label(static_cast<std::size_t>(n), '1');
  const unsigned count = 1u << (2 * n);
  for (unsigned code = 0; code < count; ++code) {
    unsigned flip = 0;
    for (int i = 0; i < n; ++i) {
      label[static_cast<std::size_t>(i)] = kOps[(code >> (2 * (n - 1 - i))) & 3u];
      const char op = label[static_cast<std::size_t>(i)];
      if (op == 'x' || op == 'y') flip |= 1u << (n - 1 - i);
    }
    // tr(rho P) = sum_c sum_r rho(r, c) P(c, r); P has one entry per row.
    std::complex<double> acc = 0.0;
    for (unsigned c = 0; c < dim; ++c) {
      const unsigned r = c ^ flip;
      std::complex<double> element = 1.0;
      for (int i = 0; i < n; ++i) {
        const int shift = n - 1 - i;
        element *= pauli_element(label[static_cast<std::size_t>(i)], (c >> shift) & 1u, (r >> shift) & 1u);
      }
      acc += eff.matrix(r, c) * element;
    }
    out.labels.emplace_back(label, acc.real());
  }
  if (n == 3) {
    out.decomposed_lhs = decomposed_lhs_n3k2(out);
    out.decomposed_lhs_normalized = out.trace > 0.0 ? out.decomposed_lhs / out.trace : 0.0;
  }
  return out;
}

double decomposed_lhs_n3k2(const ObservableExpansion& table) {
  auto get = [&](std::string_view label) {
    try {
      return table.at(label);
    } catch (const Error&) {
      throw Error(ErrorKind::kInconsistentTable, "missing label '" + std::string(label) + "'");
    }
  };
  using namespace std::complex_literals;
  const std::complex<double> coherence =
      get("xxx") - get("yyx") - get("yxy") - get("xyy") +
      1.0i * (get("yyy") - get("xxy") - get("xyx") - get("yxx"));

  static constexpr std::array<std::string_view, 8> kZLabels{"111", "zz1", "z1z", "1zz",
                                                            "11z", "1z1", "z11", "zzz"};
  using Signs = std::array<int, 8>;
  static constexpr std::array<std::array<Signs, 2>, 3> kBrackets{{
      {{{1, 1, -1, -1, 1, -1, -1, 1}, {1, 1, -1, -1, -1, 1, 1, -1}}},
      {{{1, -1, 1, -1, 1, -1, 1, -1}, {1, -1, 1, -1, -1, 1, -1, 1}}},
      {{{1, -1, -1, 1, 1, 1, -1, -1}, {1, -1, -1, 1, -1, -1, 1, 1}}},
  }};
  std::array<double, 8> z{};
  for (std::size_t i = 0; i < 8; ++i) z[i] = get(kZLabels[i]);
  auto bracket = [&](const Signs& s) {
    double v = 0.0;
    for (std::size_t i = 0; i < 8; ++i) v += s[i] * z[i];
    return v;
  };

  double roots = 0.0;
  for (const auto& pair : kBrackets) {
    double radicand = bracket(pair[0]) * bracket(pair[1]);
    if (radicand < 0.0) {
      if (radicand / 64.0 < -1e-10) {
        throw Error(ErrorKind::kInconsistentTable, "negative radicand in the decomposed inequality");
      }
      radicand = 0.0;
    }
    roots += std::sqrt(radicand);
  }
  return (std::abs(coherence) - roots) / 8.0;
}

BoxScalarProducts box_scalar_products(const CvState& rho, const Probe& box_probe, double tol,
                                      bool nested) {
  require_box(box_probe);
  const int n = box_probe.n();
  if (n != rho.dimension()) throw Error(ErrorKind::kInvalidArgument, "probe and state dimensions differ");
  QuadratureOptions options;
  options.rel_tol = tol;
  const BoxIntegrationPath path = nested ? BoxIntegrationPath::kNested : BoxIntegrationPath::kAuto;

  BoxScalarProducts out;
  const bool star = std::holds_alternative<GaussianSumState>(rho.pure()) ||
                    std::holds_alternative<PolyGaussianState>(rho.pure());
  out.path = (!nested && star) ? "star-reduction" : "nested";

  const unsigned dim = 1u << n;
  std::vector<double> integrals(dim, 0.0);
  std::vector<Box> boxes;
  for (unsigned b = 0; b < dim; ++b) {
    boxes.push_back(basis_box(box_probe, b));
    if (rho.p() > 0.0) {
      EvaluationBudget budget(options.max_evaluations);
      integrals[b] = integrate_over_box(rho.pure(), boxes.back(), options, budget, path);
    }
  }
  auto element = [&](unsigned a, unsigned b) {
    const double scale = 1.0 / std::sqrt(boxes[a].volume() * boxes[b].volume());
    double v = rho.p() * integrals[a] * integrals[b] / rho.pure_norm();
    if (rho.p() < 1.0) {
      const Box overlap = intersect(boxes[a], boxes[b]);
      v += (1.0 - rho.p()) * rho.noise().mass(overlap.lo, overlap.hi);
    }
    return scale * v;
  };
  out.offdiag = element(0, dim - 1);
  for (unsigned b = 0; b < dim; ++b) {
    BoxScalarProducts::Diagonal d;
    for (int i = 0; i < n; ++i) d.label.push_back(((b >> (n - 1 - i)) & 1u) ? 'b' : 'a');
    const Box& box = boxes[b];
    for (int i = 0; i < n; ++i) {
      d.center.push_back(0.5 * (box.lo[static_cast<std::size_t>(i)] + box.hi[static_cast<std::size_t>(i)]));
    }
    d.value = element(b, b);
    out.diagonal.push_back(std::move(d));
  }
  return out;
}

UncertaintyBudget propagate_uncertainty(const CriterionResult& result, double o, double zeta, int n,
                                        int k) {
  if (!(o >= 0.0) || !(zeta >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "uncertainties must be non-negative");
  }
  if (k < 1 || k > n) throw Error(ErrorKind::kInvalidArgument, "k outside 1..n");
  UncertaintyBudget out{o, zeta, 0.0, 0.0};
  // d term / d x_i * zeta x_i = term * zeta / (2k), for each of the 2k factors.
  double sum = 0.0;
  for (const auto& t : result.partition_terms) sum += t.value * t.value;
  const double twice_k = 2.0 * k;
  out.xi_exact = std::sqrt(o * o + zeta * zeta * sum / twice_k);
  const double gamma = static_cast<double>(partition_count(n, k));
  out.xi_bound = std::sqrt(o * o + zeta * zeta * gamma / (8.0 * k * k * k));
  return out;
}

CriterionResult efficiency_scale(const CriterionResult& result, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "tau must lie in [0, 1]");
  CriterionResult out = result;
  out.offdiag_term *= tau;
  for (auto& t : out.partition_terms) t.value *= tau;
  out.lhs = out.offdiag_term - out.partition_sum();
  out.verdict = decide(out.lhs);
  return out;
}

}  // namespace cvsep
