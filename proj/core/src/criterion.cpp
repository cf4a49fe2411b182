#include "cvsep/criterion.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "cvsep/error.hpp"

namespace cvsep {

namespace {

void check_finite(const Point& p) {
  for (double v : p) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidProbe, "non-finite probe coordinate");
  }
}

void check_k(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorKind::kInvalidArgument,
                "k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
}

}  // namespace

Probe Probe::sharp(Point phi1, Point phi2) {
  Probe p{Kind::kSharp, std::move(phi1), std::move(phi2), 0.0};
  p.validate();
  return p;
}

Probe Probe::box(Point phi1, Point phi2, double xi) {
  Probe p{Kind::kBox, std::move(phi1), std::move(phi2), xi};
  p.validate();
  return p;
}

void Probe::validate() const {
  if (phi1.size() != phi2.size() || phi1.empty()) {
    throw Error(ErrorKind::kInvalidProbe, "probe copies must have equal, non-zero dimension");
  }
  check_finite(phi1);
  check_finite(phi2);
  if (kind == Kind::kBox && (!(xi > 0.0) || !std::isfinite(xi))) {
    throw Error(ErrorKind::kInvalidProbe, "box width must be positive");
  }
  for (std::size_t i = 0; i < phi1.size(); ++i) {
    const double gap = std::abs(phi1[i] - phi2[i]);
    if (kind == Kind::kSharp ? !(gap > 0.0) : !(gap >= xi)) {
      throw Error(ErrorKind::kInvalidProbe, "probe copies not orthogonal in subsystem " +
                                                std::to_string(i));
    }
  }
}

Probe Probe::as_sharp() const { return Probe::sharp(phi1, phi2); }

std::string_view to_string(Probe::Kind kind) { return kind == Probe::Kind::kSharp ? "sharp" : "box"; }

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::kViolated ? "violated" : "not-violated";
}

Verdict decide(double lhs, double tolerance) {
  return lhs > tolerance ? Verdict::kViolated : Verdict::kNotViolated;
}

double CriterionResult::partition_sum() const {
  double s = 0.0;
  for (const auto& t : partition_terms) s += t.value;
  return s;
}

double geometric_partition_term(std::span<const double> values, int k) {
  bool tiny = false;
  for (double v : values) {
    if (v == 0.0) return 0.0;
    if (v < 0.0) throw Error(ErrorKind::kNumericalFailure, "negative diagonal matrix element");
    tiny = tiny || v < 1e-100;
  }
  const double root = 1.0 / (2.0 * k);
  if (tiny) {
    double log_sum = 0.0;
    for (double v : values) log_sum += std::log(v);
    return std::exp(log_sum * root);
  }
  double product = 1.0;
  for (double v : values) product *= std::pow(v, root);
  return product;
}

namespace {

template <class Diag>
CriterionResult assemble(const Probe& probe, int k, double offdiag, Diag&& diag_at) {
  CriterionResult result;
  result.k = k;
  result.probe_kind = probe.kind;
  result.offdiag_term = std::abs(offdiag);
  std::map<Point, double> cache;
  auto cached = [&](const Point& p) {
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, diag_at(p)).first;
    return it->second;
  };
  std::vector<double> factors;
  for (auto& partition : enumerate_partitions(probe.n(), k)) {
    factors.clear();
    for (const auto& block : partition.blocks()) {
      const auto [chi, chi_prime] = block_swap(probe.phi1, probe.phi2, block);
      factors.push_back(cached(chi));
      factors.push_back(cached(chi_prime));
    }
    const double term = geometric_partition_term(factors, k);
    result.partition_terms.push_back({std::move(partition), term});
  }
  result.lhs = result.offdiag_term - result.partition_sum();
  result.verdict = decide(result.lhs);
  return result;
}

}  // namespace

CriterionResult criterion_lhs(const DensityKernel& rho, const Probe& probe, int k) {
  if (probe.kind != Probe::Kind::kSharp) {
    throw Error(ErrorKind::kInvalidProbe, "criterion_lhs needs a sharp probe");
  }
  probe.validate();
  if (probe.n() != rho.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "probe and state dimensions differ");
  }
  check_k(k, probe.n());
  return assemble(probe, k, rho.offdiag(probe.phi1, probe.phi2),
                  [&](const Point& p) { return rho.diag(p); });
}

CriterionResult criterion_lhs_box(const DensityKernel& rho, const Probe& probe, int k, double tol) {
  if (probe.kind != Probe::Kind::kBox) {
    throw Error(ErrorKind::kInvalidProbe, "criterion_lhs_box needs a box probe");
  }
  probe.validate();
  if (probe.n() != rho.dimension()) {
    throw Error(ErrorKind::kInvalidArgument, "probe and state dimensions differ");
  }
  check_k(k, probe.n());
  if (!(tol >= 1e-12 && tol <= 1e-3)) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature tolerance must lie in [1e-12, 1e-3]");
  }
  QuadratureOptions options;
  options.rel_tol = tol;
  const Box b1 = Box::centered(probe.phi1, probe.xi);
  const Box b2 = Box::centered(probe.phi2, probe.xi);
  return assemble(probe, k, rho.box_element(b1, b2, options), [&](const Point& p) {
    const Box b = Box::centered(p, probe.xi);
    return rho.box_element(b, b, options);
  });
}

CriterionResult evaluate_criterion(const DensityKernel& rho, const Probe& probe, int k, double tol) {
  return probe.kind == Probe::Kind::kSharp ? criterion_lhs(rho, probe, k)
                                           : criterion_lhs_box(rho, probe, k, tol);
}

std::string_view to_string(ProbeForm form) { return form == ProbeForm::kGhz ? "ghz" : "w"; }

Probe build_probe(ProbeForm form, double x0, double shift) {
  if (form == ProbeForm::kGhz) {
    return Probe::sharp({x0, x0, x0}, {-x0, -x0, -x0});
  }
  return Probe::sharp({x0 + shift, x0, x0 - shift}, {-x0 - shift, -x0 + shift, -x0});
}

Probe build_box_probe(ProbeForm form, double x0, double shift, double xi) {
  const Probe sharp = build_probe(form, x0, shift);
  return Probe::box(sharp.phi1, sharp.phi2, xi);
}

}  // namespace cvsep
