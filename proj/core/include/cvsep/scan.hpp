#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvsep/optimize.hpp"
#include "cvsep/state_spec.hpp"

namespace cvsep {

/// Fixed x0 or per-evaluation optimized x0 within [lo, hi].
struct ProbeRule {
  enum class Mode { kFixed, kOptimized, kOptimizedGeneral };

  Mode mode = Mode::kFixed;
  double x0 = 1.0;
  double lo = 0.1;
  double hi = 3.0;
  std::optional<double> box_width;
  double quadrature_tol = 1e-8;
};

std::string_view to_string(ProbeRule::Mode mode);

/// Criterion for the described state with the probe chosen by `rule`.
ProbeOptimum evaluate_spec(const StateSpec& spec, const ProbeRule& rule, int k);

struct ScanAxis {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 1;

  static constexpr int kMaxSteps = 512;
  /// Inclusive linspace; throws kInvalidArgument for bad ranges/names.
  std::vector<double> values() const;
  void validate() const;
};

struct ScanSpec {
  StateSpec base;
  ScanAxis axis1;
  std::optional<ScanAxis> axis2;
  std::vector<int> ks{2};
  ProbeRule probe;
  unsigned workers = 1;

  void validate() const;
};

struct ScanEntry {
  double lhs = 0.0;
  bool fired = false;
  bool missing = false;
  std::string error;
};

struct ScanCell {
  std::vector<double> coords;
  std::vector<ScanEntry> entries;  ///< one per requested k
  double x0 = 0.0;                 ///< probe parameter used (last k)
  int strongest_k = 0;             ///< smallest fired k, 0 if none
};

struct DetectionMap {
  std::vector<std::string> axis_names;
  std::vector<int> ks;
  std::vector<ScanCell> cells;  ///< row-major, axis1 outer
};

/// Evaluates every grid cell; cells that fail are tagged missing, the scan
/// continues. Output order is row-major regardless of worker count.
DetectionMap scan(const ScanSpec& spec);

struct ThresholdQuery {
  StateSpec base;
  std::string parameter;
  double lo = 0.0;
  double hi = 1.0;
  int k = 2;
  double tolerance = 1e-6;
  ProbeRule probe;
};

ThresholdResult find_threshold(const ThresholdQuery& query);

}  // namespace cvsep
