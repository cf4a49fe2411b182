#pragma once

#include <string>

#include <json.hpp>

#include "cvsep/criterion.hpp"
#include "cvsep/experiment.hpp"
#include "cvsep/scan.hpp"
#include "cvsep/state_spec.hpp"

namespace cvsep::cli {

inline constexpr std::string_view kEngineVersion = "cvsep 0.1.0";

/// 17 significant digits, '.' separator, independent of the C++ locale.
/// Non-finite values print as nan / inf / -inf.
std::string format_number(double value);

nlohmann::ordered_json conventions_json(bool with_pauli = false);
nlohmann::ordered_json state_json(const StateSpec& spec);
nlohmann::ordered_json probe_json(const Probe& probe);
nlohmann::ordered_json result_json(const CriterionResult& result);
nlohmann::ordered_json probe_rule_json(const ProbeRule& rule);

/// Header: axis names, then lhs_k, fired_k per k (plus x0 for optimized rules).
std::string detection_map_csv(const DetectionMap& map, bool with_x0);
nlohmann::ordered_json detection_map_json(const DetectionMap& map, bool with_x0);

nlohmann::ordered_json expansion_json(const ObservableExpansion& table);

}  // namespace cvsep::cli
