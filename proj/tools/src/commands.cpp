#include "cvsep_cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cvsep/error.hpp"
#include "cvsep/experiment.hpp"
#include "cvsep/reference.hpp"
#include "cvsep/scan.hpp"
#include "cvsep_cli/output.hpp"
#include "cvsep_cli/state_file.hpp"

namespace cvsep::cli {

using nlohmann::ordered_json;

namespace {

Error input_error(const std::string& what) { return Error(ErrorKind::kInvalidArgument, what); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw input_error(what + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw input_error(what + ": expected an integer, got '" + text + "'");
  }
  return v;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw input_error(what + ": expected lo:hi, got '" + text + "'");
  return {parse_number(parts[0], what), parse_number(parts[1], what)};
}

ScanAxis parse_axis(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw input_error(what + ": expected name:lo:hi:steps, got '" + text + "'");
  ScanAxis axis{parts[0], parse_number(parts[1], what), parse_number(parts[2], what),
                parse_int(parts[3], what)};
  axis.validate();
  return axis;
}

std::vector<int> parse_ks(const std::vector<std::string>& raw) {
  std::vector<int> ks;
  for (const auto& item : raw) {
    for (const auto& piece : split(item, ',')) ks.push_back(parse_int(piece, "--k"));
  }
  return ks;
}

// --probe x0[,form]
struct ProbeArg {
  double x0 = 1.0;
  std::optional<ProbeForm> form;
};

ProbeArg parse_probe(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) throw input_error("--probe: expected x0[,ghz|w]");
  ProbeArg arg{parse_number(parts[0], "--probe"), std::nullopt};
  if (parts.size() == 2) {
    if (parts[1] == "ghz") arg.form = ProbeForm::kGhz;
    else if (parts[1] == "w") arg.form = ProbeForm::kW;
    else throw input_error("--probe: unknown form '" + parts[1] + "' (ghz, w)");
  }
  return arg;
}

struct CommonProbeOptions {
  std::optional<std::string> optimize;  // lo:hi
  std::optional<double> box;
  double quad_tol = 1e-8;
  bool general = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--optimize", optimize, "optimize x0 over lo:hi instead of a fixed x0");
    cmd->add_flag("--general", general, "refine the optimized probe over all 2n coordinates");
    cmd->add_option("--box", box, "box probes of width xi");
    cmd->add_option("--quad-tol", quad_tol, "relative quadrature tolerance for box probes");
  }

  ProbeRule rule(double x0) const {
    ProbeRule r;
    r.x0 = x0;
    r.box_width = box;
    r.quadrature_tol = quad_tol;
    if (optimize) {
      const auto [lo, hi] = parse_range(*optimize, "--optimize");
      r.mode = general ? ProbeRule::Mode::kOptimizedGeneral : ProbeRule::Mode::kOptimized;
      r.lo = lo;
      r.hi = hi;
    } else if (general) {
      throw input_error("--general requires --optimize");
    }
    return r;
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::kNumericalFailure, "write to '" + path + "' failed");
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string state_file;
  std::vector<std::string> ks{"2"};
  std::string probe = "1";
  CommonProbeOptions probe_opts;
  bool json = false;
  bool csv = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const StateSpec spec = load_state_file(a.state_file);
  const ProbeArg pa = parse_probe(a.probe);
  const ProbeRule rule = a.probe_opts.rule(pa.x0);
  const auto ks = parse_ks(a.ks);
  if (ks.empty()) throw input_error("--k: no values");

  const CvState rho = spec.build();
  const ProbeForm form = pa.form.value_or(spec.probe_form());
  std::vector<ProbeOptimum> results;
  for (int k : ks) {
    if (rule.mode == ProbeRule::Mode::kFixed) {
      Probe probe = rule.box_width ? build_box_probe(form, pa.x0, spec.params.shift, *rule.box_width)
                                   : build_probe(form, pa.x0, spec.params.shift);
      results.push_back({probe, pa.x0, evaluate_criterion(rho, probe, k, rule.quadrature_tol)});
    } else {
      StateSpec local = spec;
      if (pa.form && *pa.form != spec.probe_form()) {
        throw input_error("--probe form cannot be overridden together with --optimize");
      }
      results.push_back(evaluate_spec(local, rule, k));
    }
  }

  if (a.csv) {
    const ordered_json conventions = conventions_json();
    for (auto it = conventions.begin(); it != conventions.end(); ++it) {
      out << "# " << it.key() << ": " << it->get<std::string>() << '\n';
    }
    out << "k,x0,lhs,offdiag_term,partition_sum,verdict\n";
    for (const auto& r : results) {
      out << r.result.k << ',' << format_number(r.x0) << ',' << format_number(r.result.lhs) << ','
          << format_number(r.result.offdiag_term) << ',' << format_number(r.result.partition_sum())
          << ',' << to_string(r.result.verdict) << '\n';
    }
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "eval";
  j["state"] = state_json(spec);
  j["probe_rule"] = probe_rule_json(rule);
  ordered_json list = ordered_json::array();
  for (const auto& r : results) {
    ordered_json item = result_json(r.result);
    item["probe"] = probe_json(r.probe);
    if (!std::isnan(r.x0)) item["x0"] = r.x0;
    list.push_back(std::move(item));
  }
  j["results"] = std::move(list);
  j["conventions"] = conventions_json();
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- scan ----------------------------------------------------------------

struct ScanArgs {
  std::string state_file;
  std::string axis1;
  std::optional<std::string> axis2;
  std::vector<std::string> ks{"2"};
  double x0 = 1.0;
  CommonProbeOptions probe_opts;
  std::optional<std::string> out_path;
  std::string format = "csv";
  std::optional<unsigned> workers;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  ScanSpec spec;
  spec.base = load_state_file(a.state_file);
  spec.axis1 = parse_axis(a.axis1, "--axis1");
  if (a.axis2) spec.axis2 = parse_axis(*a.axis2, "--axis2");
  spec.ks = parse_ks(a.ks);
  spec.probe = a.probe_opts.rule(a.x0);
  spec.workers = a.workers.value_or(default_workers());
  if (spec.workers == 0) throw input_error("--workers must be positive");
  if (a.format != "csv" && a.format != "json") throw input_error("--format: expected csv or json");
  spec.validate();

  const auto start = std::chrono::steady_clock::now();
  const DetectionMap map = scan(spec);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool with_x0 = spec.probe.mode != ProbeRule::Mode::kFixed;
  std::string body;
  if (a.format == "csv") {
    body = detection_map_csv(map, with_x0);
  } else {
    ordered_json j;
    j["command"] = "scan";
    j["state"] = state_json(spec.base);
    j["probe_rule"] = probe_rule_json(spec.probe);
    j["map"] = detection_map_json(map, with_x0);
    j["conventions"] = conventions_json();
    body = j.dump(2) + "\n";
  }

  std::size_t missing = 0;
  for (const auto& cell : map.cells) {
    for (const auto& e : cell.entries) missing += e.missing ? 1 : 0;
  }

  if (!a.out_path) {
    out << body;
    return kExitOk;
  }
  write_text(*a.out_path, body);
  ordered_json meta;
  meta["engine"] = std::string(kEngineVersion);
  meta["state"] = state_json(spec.base);
  ordered_json axes = ordered_json::array();
  for (const ScanAxis* axis : {&spec.axis1, spec.axis2 ? &*spec.axis2 : nullptr}) {
    if (axis) axes.push_back({{"name", axis->name}, {"lo", axis->lo}, {"hi", axis->hi}, {"steps", axis->steps}});
  }
  meta["axes"] = std::move(axes);
  meta["ks"] = spec.ks;
  meta["probe_rule"] = probe_rule_json(spec.probe);
  meta["conventions"] = conventions_json();
  meta["cells"] = map.cells.size();
  meta["missing_entries"] = missing;
  meta["run"] = {{"workers", spec.workers}, {"elapsed_seconds", elapsed}};
  write_text(*a.out_path + ".meta.json", meta.dump(2) + "\n");
  out << "wrote " << map.cells.size() << " cells to " << *a.out_path << '\n';
  return kExitOk;
}

// ---- threshold -------------------------------------------------------------

struct ThresholdArgs {
  std::string state_file;
  std::string param;
  std::string bracket;
  int k = 2;
  double tol = 1e-6;
  double x0 = 1.0;
  CommonProbeOptions probe_opts;
};

int cmd_threshold(const ThresholdArgs& a, std::ostream& out) {
  ThresholdQuery q;
  q.base = load_state_file(a.state_file);
  q.parameter = a.param;
  std::tie(q.lo, q.hi) = parse_range(a.bracket, "--bracket");
  q.k = a.k;
  q.tolerance = a.tol;
  q.probe = a.probe_opts.rule(a.x0);
  const ThresholdResult t = find_threshold(q);

  ordered_json j;
  j["command"] = "threshold";
  j["state"] = state_json(q.base);
  j["parameter"] = q.parameter;
  j["k"] = q.k;
  j["probe_rule"] = probe_rule_json(q.probe);
  j["value"] = t.value;
  j["tolerance"] = q.tolerance;
  j["bracket"] = {q.lo, q.hi};
  j["lhs_at_bracket"] = {t.f_lo, t.f_hi};
  j["iterations"] = t.iterations;

  const StateSpec& s = q.base;
  const bool fixed = q.probe.mode == ProbeRule::Mode::kFixed && !q.probe.box_width;
  if (s.family == Family::kGhzLike && q.parameter == "epsilon" && fixed && s.p == 1.0 && q.k == 2) {
    const double closed = reference::ghz_epsilon_threshold(q.probe.x0);
    j["closed_form"] = {{"value", closed}, {"deviation", t.value - closed}};
    if (s.params.sigma == 1.0 && q.probe.x0 == 1.0) {
      const double lit = reference::kLiteratureEpsilonThreshold;
      j["literature_anchor"] = {{"value", lit},
                                {"deviation", t.value - lit},
                                {"relative_deviation", (t.value - lit) / lit}};
    }
  }
  if (s.family == Family::kIndicator && q.parameter == "p" && q.k == 2) {
    const double e = s.params.epsilon, b = s.params.beta, d = s.noise.width;
    if (e / 2.0 < b && b <= d) {
      j["closed_form"] = {{"value", reference::indicator_p_threshold(e, b, d)},
                          {"note", "three partition terms each carry the noise density"}};
      j["literature_anchor"] = {{"value", reference::indicator_p_threshold_literature(e, b, d)},
                                {"note", "single noise term"}};
    }
  }
  if (s.family == Family::kAnnihilatedGhz && q.parameter == "p" && q.k == 2 &&
      s.noise.kind == DiagonalNoise::Kind::kGaussian && s.noise.width <= 1.5 * s.params.sigma) {
    j["literature_anchor"] = {{"claim", "every p > 0 detected when delta <= 3 sigma / 2"},
                              {"detected_above", t.value}};
  }
  j["conventions"] = conventions_json();
  out << j.dump(2) << '\n';
  return kExitOk;
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string state_file;
  std::string probe = "1";
  double xi = 0.1;
  double o = 1e-3;
  double zeta = 1e-2;
  double tau = 1.0;
  double quad_tol = 1e-8;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  const StateSpec spec = load_state_file(a.state_file);
  const ProbeArg pa = parse_probe(a.probe);
  if (!(a.tau >= 0.0 && a.tau <= 1.0)) throw input_error("--tau must lie in [0, 1]");
  const CvState rho = spec.build();
  const Probe probe = build_box_probe(pa.form.value_or(spec.probe_form()), pa.x0, spec.params.shift, a.xi);
  constexpr int kParties = 3;
  constexpr int kK = 2;

  const BoxScalarProducts products = box_scalar_products(rho, probe, a.quad_tol);
  const EffectiveQubitState eff = effective_qubit_state(rho, probe, a.quad_tol);
  const ObservableExpansion table = pauli_expectations(eff);
  const CriterionResult box = criterion_lhs_box(rho, probe, kK, a.quad_tol);
  const UncertaintyBudget budget = propagate_uncertainty(box, a.o, a.zeta, kParties, kK);
  const CriterionResult scaled = efficiency_scale(box, a.tau);

  ordered_json j;
  j["command"] = "experiment";
  j["state"] = state_json(spec);
  j["probe"] = probe_json(probe);
  ordered_json sp;
  sp["path"] = products.path;
  sp["offdiag"] = products.offdiag;
  ordered_json diag;
  for (const auto& d : products.diagonal) diag[d.label] = d.value;
  sp["diagonal"] = std::move(diag);
  j["scalar_products"] = std::move(sp);
  j["expansion"] = expansion_json(table);
  j["box_criterion"] = result_json(box);
  j["uncertainty"] = {{"o", budget.o},
                      {"zeta", budget.zeta},
                      {"xi_exact", budget.xi_exact},
                      {"xi_bound", budget.xi_bound},
                      {"gamma", partition_count(kParties, kK)}};
  // tau scales the trace as well, so the normalized value is unchanged.
  j["efficiency"] = {{"tau", a.tau},
                     {"lhs", scaled.lhs},
                     {"decomposed_lhs", a.tau * table.decomposed_lhs},
                     {"decomposed_lhs_normalized", table.decomposed_lhs_normalized},
                     {"verdict", std::string(to_string(scaled.verdict))}};
  j["conventions"] = conventions_json(true);
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int exit_code_for(int error_kind) {
  switch (static_cast<ErrorKind>(error_kind)) {
    case ErrorKind::kNumericalFailure:
    case ErrorKind::kInconsistentTable:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

unsigned default_workers() {
  if (const char* env = std::getenv("CVSEP_WORKERS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-separability criterion for continuous-variable multipartite states", "cvsep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kEngineVersion));

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "evaluate the criterion for one probe");
  e->add_option("state", eval.state_file, "state file")->required();
  e->add_option("--k", eval.ks, "k values (repeat or comma-separate)");
  e->add_option("--probe", eval.probe, "x0[,ghz|w]");
  eval.probe_opts.attach(e);
  auto* json_flag = e->add_flag("--json", eval.json, "JSON output (default)");
  e->add_flag("--csv", eval.csv, "CSV output")->excludes(json_flag);

  ScanArgs scan_args;
  auto* s = app.add_subcommand("scan", "detection map over one or two parameter axes");
  s->add_option("state", scan_args.state_file, "state file")->required();
  s->add_option("--axis1", scan_args.axis1, "name:lo:hi:steps")->required();
  s->add_option("--axis2", scan_args.axis2, "name:lo:hi:steps");
  s->add_option("--k", scan_args.ks, "k values (repeat or comma-separate)");
  s->add_option("--x0", scan_args.x0, "fixed probe parameter");
  scan_args.probe_opts.attach(s);
  s->add_option("--out", scan_args.out_path, "output file; writes <out>.meta.json alongside");
  s->add_option("--format", scan_args.format, "csv or json");
  s->add_option("--workers", scan_args.workers, "worker threads (default: CVSEP_WORKERS or cores)");

  ThresholdArgs thr;
  auto* t = app.add_subcommand("threshold", "bisect the lhs = 0 crossing in one parameter");
  t->add_option("state", thr.state_file, "state file")->required();
  t->add_option("--param", thr.param, "swept parameter")->required();
  t->add_option("--bracket", thr.bracket, "lo:hi")->required();
  t->add_option("--k", thr.k, "k");
  t->add_option("--tol", thr.tol, "bisection tolerance");
  t->add_option("--x0", thr.x0, "fixed probe parameter");
  thr.probe_opts.attach(t);

  ExperimentArgs exp;
  auto* x = app.add_subcommand("experiment", "finite-detector protocol for three parties, k = 2");
  x->add_option("state", exp.state_file, "state file")->required();
  x->add_option("--probe", exp.probe, "x0[,ghz|w]");
  x->add_option("--xi", exp.xi, "detector width");
  x->add_option("--o", exp.o, "absolute uncertainty of the off-diagonal term");
  x->add_option("--zeta", exp.zeta, "relative uncertainty of diagonal terms");
  x->add_option("--tau", exp.tau, "detector efficiency in [0, 1]");
  x->add_option("--quad-tol", exp.quad_tol, "relative quadrature tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kEngineVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& pe) {
    err << "error: " << pe.what() << '\n';
    return kExitInput;
  }

  try {
    if (e->parsed()) return cmd_eval(eval, out);
    if (s->parsed()) return cmd_scan(scan_args, out);
    if (t->parsed()) return cmd_threshold(thr, out);
    if (x->parsed()) return cmd_experiment(exp, out);
  } catch (const Error& error) {
    err << "error: " << error.what() << '\n';
    return exit_code_for(static_cast<int>(error.kind()));
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace cvsep::cli
