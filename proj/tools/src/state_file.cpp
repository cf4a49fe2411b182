#include "cvsep_cli/state_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cvsep/error.hpp"
#include "cvsep_cli/output.hpp"

namespace cvsep::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Fields {
 public:
  explicit Fields(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, std::string_view field, const std::string& message) const {
    std::string where = source_;
    if (line > 0) where += ":" + std::to_string(line);
    throw Error(ErrorKind::kParseError, where + ": " + std::string(field) + ": " + message);
  }

  void add(int line, std::string key, std::string value) {
    if (auto it = entries_.find(key); it != entries_.end()) {
      fail(line, key, "duplicate key (first set on line " + std::to_string(it->second.line) + ")");
    }
    entries_.emplace(std::move(key), Entry{std::move(value), line});
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line_of(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  const std::string& text(const std::string& key) const {
    if (!has(key)) fail(0, key, "required key missing");
    used_.insert(key);
    return entries_.at(key).value;
  }

  double number(const std::string& key) const {
    const std::string& v = text(key);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
      fail(line_of(key), key, "expected a finite number, got '" + v + "'");
    }
    return out;
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) fail(line_of(key), key, "must be positive");
    return v;
  }

  void check_known(std::initializer_list<std::string_view> known) const {
    for (const auto& [key, entry] : entries_) {
      if (std::find(known.begin(), known.end(), key) == known.end()) fail(entry.line, key, "unknown key");
    }
  }

  void forbid(const std::string& key, std::string_view family) const {
    if (has(key)) fail(line_of(key), key, "not a parameter of family " + std::string(family));
  }

  void check_all_used() const {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) fail(entry.line, key, "unknown key");
    }
  }

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
  mutable std::set<std::string> used_;
};

}  // namespace

StateSpec parse_state(std::istream& in, std::string_view source) {
  Fields fields{std::string(source)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fields.fail(line_no, line, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fields.fail(line_no, "<key>", "empty key");
    if (value.empty()) fields.fail(line_no, key, "empty value");
    fields.add(line_no, key, value);
  }
  fields.check_known({"family", "p", "sigma", "epsilon", "shift", "beta", "noise", "delta", "operator"});

  const std::string& family_name = fields.text("family");
  const auto family = parse_family(family_name);
  if (!family) {
    fields.fail(fields.line_of("family"), "family",
                "unknown family '" + family_name + "' (ghz_like, w_like, indicator, annihilated_ghz)");
  }

  StateSpec spec;
  spec.family = *family;
  FamilyParams& fp = spec.params;
  switch (*family) {
    case Family::kGhzLike:
      fp.sigma = fields.positive("sigma");
      fp.epsilon = fields.positive("epsilon");
      fields.forbid("shift", family_name);
      fields.forbid("beta", family_name);
      fields.forbid("operator", family_name);
      break;
    case Family::kWLike:
      fp.sigma = fields.positive("sigma");
      fp.epsilon = fields.positive("epsilon");
      fp.shift = fields.number("shift");
      if (fp.shift < 0.0) fields.fail(fields.line_of("shift"), "shift", "must be non-negative");
      fields.forbid("beta", family_name);
      fields.forbid("operator", family_name);
      break;
    case Family::kIndicator:
      fp.epsilon = fields.positive("epsilon");
      fp.beta = fields.positive("beta");
      fields.forbid("sigma", family_name);
      fields.forbid("shift", family_name);
      fields.forbid("operator", family_name);
      break;
    case Family::kAnnihilatedGhz:
      fp.sigma = fields.positive("sigma");
      fp.epsilon = fields.positive("epsilon");
      fields.forbid("shift", family_name);
      fields.forbid("beta", family_name);
      if (fields.has("operator")) {
        const auto op = parse_mode_operator(fields.text("operator"));
        if (!op) fields.fail(fields.line_of("operator"), "operator", "expected position or ladder");
        fp.mode_operator = *op;
      }
      break;
  }

  spec.p = fields.number("p");
  spec.noise.kind = default_noise_kind(*family);
  if (fields.has("noise")) {
    const std::string& kind = fields.text("noise");
    if (kind == "gaussian") spec.noise.kind = DiagonalNoise::Kind::kGaussian;
    else if (kind == "box") spec.noise.kind = DiagonalNoise::Kind::kBox;
    else fields.fail(fields.line_of("noise"), "noise", "expected gaussian or box, got '" + kind + "'");
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) fields.fail(fields.line_of("p"), "p", "must lie in [0, 1]");
  if (spec.p < 1.0 && !fields.has("delta")) fields.fail(0, "delta", "required when p < 1");
  spec.noise.width = fields.has("delta") ? fields.positive("delta") : 1.0;
  fields.check_all_used();

  // Positivity constraints, reported against the offending line where possible.
  try {
    spec.noise.validate();
  } catch (const Error& e) {
    fields.fail(fields.line_of("delta"), "delta", e.what());
  }
  try {
    (void)build_family_state(spec.family, spec.params);
  } catch (const Error& e) {
    fields.fail(0, "parameters", e.what());
  }
  return spec;
}

StateSpec load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, path + ": cannot open file");
  return parse_state(in, path);
}

std::string format_state(const StateSpec& spec) {
  std::ostringstream out;
  out << "family = " << to_string(spec.family) << '\n';
  out << "p = " << format_number(spec.p) << '\n';
  const FamilyParams& fp = spec.params;
  if (spec.family != Family::kIndicator) out << "sigma = " << format_number(fp.sigma) << '\n';
  out << "epsilon = " << format_number(fp.epsilon) << '\n';
  if (spec.family == Family::kWLike) out << "shift = " << format_number(fp.shift) << '\n';
  if (spec.family == Family::kIndicator) out << "beta = " << format_number(fp.beta) << '\n';
  if (spec.family == Family::kAnnihilatedGhz) out << "operator = " << to_string(fp.mode_operator) << '\n';
  out << "noise = " << (spec.noise.kind == DiagonalNoise::Kind::kGaussian ? "gaussian" : "box") << '\n';
  out << "delta = " << format_number(spec.noise.width) << '\n';
  return out.str();
}

}  // namespace cvsep::cli
