#include "cvsep_cli/output.hpp"

#include <charconv>
#include <cmath>

namespace cvsep::cli {

using nlohmann::ordered_json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

ordered_json conventions_json(bool with_pauli) {
  ordered_json c;
  c["density-convention"] =
      "sharp diagonal elements of position-diagonal kernels are read as probability densities";
  c["natural-units"] = "lengths in the units of the state file; no physical constants";
  c["literal-partition-sum"] = "every k-partition contributes its own term, no symmetry folding";
  if (with_pauli) {
    c["pauli-labels"] = std::string(kPauliLabelConvention);
    c["sigma-y"] = std::string(kSigmaYConvention);
  }
  return c;
}

ordered_json state_json(const StateSpec& spec) {
  ordered_json s;
  s["family"] = std::string(to_string(spec.family));
  s["p"] = spec.p;
  if (spec.family != Family::kIndicator) s["sigma"] = spec.params.sigma;
  s["epsilon"] = spec.params.epsilon;
  if (spec.family == Family::kWLike) s["shift"] = spec.params.shift;
  if (spec.family == Family::kIndicator) s["beta"] = spec.params.beta;
  if (spec.family == Family::kAnnihilatedGhz) {
    s["operator"] = std::string(to_string(spec.params.mode_operator));
  }
  s["noise"] = spec.noise.kind == DiagonalNoise::Kind::kGaussian ? "gaussian" : "box";
  s["delta"] = spec.noise.width;
  return s;
}

ordered_json probe_json(const Probe& probe) {
  ordered_json p;
  p["kind"] = std::string(to_string(probe.kind));
  p["phi1"] = probe.phi1;
  p["phi2"] = probe.phi2;
  if (probe.kind == Probe::Kind::kBox) p["xi"] = probe.xi;
  return p;
}

ordered_json result_json(const CriterionResult& result) {
  ordered_json r;
  r["k"] = result.k;
  r["lhs"] = result.lhs;
  r["offdiag_term"] = result.offdiag_term;
  r["partition_sum"] = result.partition_sum();
  ordered_json terms = ordered_json::array();
  for (const auto& t : result.partition_terms) {
    terms.push_back({{"partition", t.partition.label()}, {"value", t.value}});
  }
  r["partition_terms"] = std::move(terms);
  r["verdict"] = std::string(to_string(result.verdict));
  return r;
}

ordered_json probe_rule_json(const ProbeRule& rule) {
  ordered_json r;
  r["mode"] = std::string(to_string(rule.mode));
  if (rule.mode == ProbeRule::Mode::kFixed) {
    r["x0"] = rule.x0;
  } else {
    r["x0_range"] = {rule.lo, rule.hi};
  }
  r["probe_kind"] = rule.box_width ? "box" : "sharp";
  if (rule.box_width) {
    r["xi"] = *rule.box_width;
    r["quadrature_tol"] = rule.quadrature_tol;
  }
  return r;
}

std::string detection_map_csv(const DetectionMap& map, bool with_x0) {
  std::string out;
  for (const auto& name : map.axis_names) out += name + ",";
  for (std::size_t i = 0; i < map.ks.size(); ++i) {
    const std::string k = std::to_string(map.ks[i]);
    out += "lhs_" + k + ",fired_" + k;
    out += i + 1 < map.ks.size() ? "," : "";
  }
  if (with_x0) out += ",x0";
  out += '\n';
  for (const auto& cell : map.cells) {
    for (double c : cell.coords) out += format_number(c) + ",";
    for (std::size_t i = 0; i < cell.entries.size(); ++i) {
      const ScanEntry& e = cell.entries[i];
      out += e.missing ? std::string("nan,missing") : format_number(e.lhs) + (e.fired ? ",1" : ",0");
      out += i + 1 < cell.entries.size() ? "," : "";
    }
    if (with_x0) out += "," + format_number(cell.x0);
    out += '\n';
  }
  return out;
}

ordered_json detection_map_json(const DetectionMap& map, bool with_x0) {
  ordered_json j;
  j["axes"] = map.axis_names;
  j["ks"] = map.ks;
  ordered_json cells = ordered_json::array();
  for (const auto& cell : map.cells) {
    ordered_json c;
    c["coords"] = cell.coords;
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < cell.entries.size(); ++i) {
      const ScanEntry& e = cell.entries[i];
      ordered_json entry;
      entry["k"] = map.ks[i];
      if (e.missing) {
        entry["lhs"] = nullptr;
        entry["missing"] = true;
        entry["error"] = e.error;
      } else {
        entry["lhs"] = e.lhs;
        entry["fired"] = e.fired;
      }
      entries.push_back(std::move(entry));
    }
    c["entries"] = std::move(entries);
    c["strongest_k"] = cell.strongest_k;
    if (with_x0) c["x0"] = cell.x0;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j;
}

ordered_json expansion_json(const ObservableExpansion& table) {
  ordered_json j;
  ordered_json labels;
  for (const auto& [label, value] : table.labels) labels[label] = value;
  j["labels"] = std::move(labels);
  j["decomposed_lhs"] = table.decomposed_lhs;
  j["decomposed_lhs_normalized"] = table.decomposed_lhs_normalized;
  j["trace_in_subspace"] = table.trace;
  j["convention"] = std::string(kPauliLabelConvention);
  return j;
}

}  // namespace cvsep::cli
