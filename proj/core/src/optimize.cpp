#include "cvsep/optimize.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cvsep/error.hpp"

namespace cvsep {

namespace {

constexpr double kInvalid = -std::numeric_limits<double>::infinity();

Probe make_probe(const ProbeSearch& search, double x0) {
  return search.box_width ? build_box_probe(search.form, x0, search.shift, *search.box_width)
                          : build_probe(search.form, x0, search.shift);
}

}  // namespace

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

ProbeOptimum optimize_probe(const DensityKernel& rho, int k, const ProbeSearch& search) {
  if (!(search.lo < search.hi) || !std::isfinite(search.lo) || !std::isfinite(search.hi)) {
    throw Error(ErrorKind::kInvalidArgument, "probe search bounds must be finite with lo < hi");
  }
  if (search.grid_points < 2) throw Error(ErrorKind::kInvalidArgument, "need >= 2 grid points");

  auto lhs_at = [&](double x0) {
    try {
      return evaluate_criterion(rho, make_probe(search, x0), k, search.quadrature_tol).lhs;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidProbe) return kInvalid;
      throw;
    }
  };

  const int m = search.grid_points;
  const double step = (search.hi - search.lo) / (m - 1);
  int best = -1;
  double best_value = kInvalid;
  for (int i = 0; i < m; ++i) {
    const double v = lhs_at(search.lo + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best < 0) throw Error(ErrorKind::kNoValidProbe, "no valid probe on the search grid");

  double x_best = search.lo + best * step;
  const double a = search.lo + std::max(0, best - 1) * step;
  const double b = search.lo + std::min(m - 1, best + 1) * step;
  const double refined = golden_section_max(lhs_at, a, b, search.x_tolerance);
  if (lhs_at(refined) > best_value) x_best = refined;

  ProbeOptimum out{make_probe(search, x_best), x_best, {}};
  out.result = evaluate_criterion(rho, out.probe, k, search.quadrature_tol);
  return out;
}

ProbeOptimum optimize_probe_general(const DensityKernel& rho, int k, const Probe& start,
                                    double radius, int sweeps, double x_tolerance) {
  start.validate();
  if (!(radius > 0.0)) throw Error(ErrorKind::kInvalidArgument, "search radius must be positive");
  Probe current = start;
  auto lhs_of = [&](const Probe& p) {
    try {
      p.validate();
      return evaluate_criterion(rho, p, k).lhs;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidProbe) return kInvalid;
      throw;
    }
  };
  double best = lhs_of(current);
  const int n = current.n();
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    const double before = best;
    for (int coord = 0; coord < 2 * n; ++coord) {
      Point& target = coord < n ? current.phi1 : current.phi2;
      const auto idx = static_cast<std::size_t>(coord % n);
      const double origin = target[idx];
      auto along = [&](double v) {
        Probe trial = current;
        (coord < n ? trial.phi1 : trial.phi2)[idx] = v;
        return lhs_of(trial);
      };
      const double v = golden_section_max(along, origin - radius, origin + radius, x_tolerance);
      const double value = along(v);
      if (value > best) {
        target[idx] = v;
        best = value;
      }
    }
    if (best - before <= 1e-15 * std::abs(best)) break;
  }
  ProbeOptimum out{current, std::numeric_limits<double>::quiet_NaN(), {}};
  out.result = evaluate_criterion(rho, current, k);
  return out;
}

ThresholdResult find_threshold(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "threshold bracket needs lo < hi and tol > 0");
  }
  ThresholdResult out;
  out.f_lo = f(lo);
  out.f_hi = f(hi);
  if (out.f_lo == 0.0) {
    out.value = lo;
    return out;
  }
  if (out.f_hi == 0.0) {
    out.value = hi;
    return out;
  }
  if ((out.f_lo > 0.0) == (out.f_hi > 0.0)) {
    std::ostringstream msg;
    msg << std::setprecision(6) << "no sign change: f(" << lo << ")=" << out.f_lo << ", f(" << hi
        << ")=" << out.f_hi;
    throw Error(ErrorKind::kBracketError, msg.str());
  }
  const bool lo_positive = out.f_lo > 0.0;
  double a = lo;
  double b = hi;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    ++out.iterations;
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    if ((fm > 0.0) == lo_positive) a = mid;
    else b = mid;
  }
  out.value = 0.5 * (a + b);
  return out;
}

}  // namespace cvsep
