#include "cvsep/scan.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "cvsep/error.hpp"

namespace cvsep {

std::string_view to_string(ProbeRule::Mode mode) {
  switch (mode) {
    case ProbeRule::Mode::kFixed: return "fixed";
    case ProbeRule::Mode::kOptimized: return "optimized";
    case ProbeRule::Mode::kOptimizedGeneral: return "optimized-general";
  }
  return "?";
}

ProbeOptimum evaluate_spec(const StateSpec& spec, const ProbeRule& rule, int k) {
  const CvState rho = spec.build();
  const ProbeForm form = spec.probe_form();
  const double shift = spec.params.shift;
  if (rule.mode == ProbeRule::Mode::kFixed) {
    Probe probe = rule.box_width ? build_box_probe(form, rule.x0, shift, *rule.box_width)
                                 : build_probe(form, rule.x0, shift);
    return {probe, rule.x0, evaluate_criterion(rho, probe, k, rule.quadrature_tol)};
  }
  ProbeSearch search;
  search.form = form;
  search.shift = shift;
  search.lo = rule.lo;
  search.hi = rule.hi;
  search.box_width = rule.box_width;
  search.quadrature_tol = rule.quadrature_tol;
  ProbeOptimum best = optimize_probe(rho, k, search);
  if (rule.mode == ProbeRule::Mode::kOptimizedGeneral) {
    if (rule.box_width) {
      throw Error(ErrorKind::kInvalidArgument, "general probe optimization supports sharp probes only");
    }
    best = optimize_probe_general(rho, k, best.probe);
  }
  return best;
}

std::vector<double> ScanAxis::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
  out.back() = hi;
  return out;
}

void ScanAxis::validate() const {
  if (name != "x0" && !StateSpec::is_parameter(name)) {
    throw Error(ErrorKind::kInvalidArgument, "unknown scan axis '" + name + "'");
  }
  if (steps < 1 || steps > kMaxSteps) {
    throw Error(ErrorKind::kInvalidArgument,
                "axis '" + name + "' needs 1.." + std::to_string(kMaxSteps) + " steps");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || (steps > 1 && !(lo < hi)) ||
      (steps == 1 && lo != hi && !(lo < hi))) {
    throw Error(ErrorKind::kInvalidArgument, "axis '" + name + "' must be strictly increasing");
  }
}

void ScanSpec::validate() const {
  axis1.validate();
  if (axis2) {
    axis2->validate();
    if (axis2->name == axis1.name) {
      throw Error(ErrorKind::kInvalidArgument, "scan axes must differ");
    }
  }
  if (ks.empty()) throw Error(ErrorKind::kInvalidArgument, "no k requested");
  for (int k : ks) {
    if (k < 1 || k > 3) throw Error(ErrorKind::kInvalidArgument, "k must lie in 1..3");
  }
  const bool sweeps_x0 = axis1.name == "x0" || (axis2 && axis2->name == "x0");
  if (sweeps_x0 && probe.mode != ProbeRule::Mode::kFixed) {
    throw Error(ErrorKind::kInvalidArgument, "an x0 axis requires a fixed probe rule");
  }
}

namespace {

ScanCell evaluate_cell(const ScanSpec& spec, std::vector<double> coords) {
  ScanCell cell;
  cell.coords = std::move(coords);
  StateSpec state = spec.base;
  ProbeRule rule = spec.probe;
  std::vector<std::string_view> names{spec.axis1.name};
  if (spec.axis2) names.push_back(spec.axis2->name);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == "x0") rule.x0 = cell.coords[i];
    else state.set_parameter(names[i], cell.coords[i]);
  }
  cell.x0 = rule.x0;
  for (int k : spec.ks) {
    ScanEntry entry;
    try {
      const ProbeOptimum r = evaluate_spec(state, rule, k);
      entry.lhs = r.result.lhs;
      entry.fired = r.result.verdict == Verdict::kViolated;
      cell.x0 = r.x0;
      if (entry.fired && (cell.strongest_k == 0 || k < cell.strongest_k)) cell.strongest_k = k;
    } catch (const Error& e) {
      entry.missing = true;
      entry.lhs = std::numeric_limits<double>::quiet_NaN();
      entry.error = e.what();
    }
    cell.entries.push_back(std::move(entry));
  }
  return cell;
}

}  // namespace

DetectionMap scan(const ScanSpec& spec) {
  spec.validate();
  DetectionMap map;
  map.axis_names.push_back(spec.axis1.name);
  if (spec.axis2) map.axis_names.push_back(spec.axis2->name);
  map.ks = spec.ks;

  const auto v1 = spec.axis1.values();
  const auto v2 = spec.axis2 ? spec.axis2->values() : std::vector<double>{};
  const std::size_t inner = spec.axis2 ? v2.size() : 1;
  const std::size_t total = v1.size() * inner;
  map.cells.resize(total);

  auto coords_of = [&](std::size_t idx) {
    std::vector<double> c{v1[idx / inner]};
    if (spec.axis2) c.push_back(v2[idx % inner]);
    return c;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(spec.workers, static_cast<unsigned>(total)));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) map.cells[i] = evaluate_cell(spec, coords_of(i));
    return map;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      map.cells[i] = evaluate_cell(spec, coords_of(i));
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  return map;
}

ThresholdResult find_threshold(const ThresholdQuery& query) {
  const bool is_x0 = query.parameter == "x0";
  if (!is_x0 && !StateSpec::is_parameter(query.parameter)) {
    throw Error(ErrorKind::kInvalidArgument, "unknown threshold parameter '" + query.parameter + "'");
  }
  if (is_x0 && query.probe.mode != ProbeRule::Mode::kFixed) {
    throw Error(ErrorKind::kInvalidArgument, "an x0 sweep requires a fixed probe rule");
  }
  auto lhs_at = [&](double value) {
    StateSpec state = query.base;
    ProbeRule rule = query.probe;
    if (is_x0) rule.x0 = value;
    else state.set_parameter(query.parameter, value);
    return evaluate_spec(state, rule, query.k).result.lhs;
  };
  return find_threshold(lhs_at, query.lo, query.hi, query.tolerance);
}

}  // namespace cvsep
