#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "cvsep/criterion.hpp"
#include "cvsep/error.hpp"
#include "cvsep/state_spec.hpp"
#include "cvsep_cli/commands.hpp"
#include "cvsep_cli/output.hpp"
#include "cvsep_cli/state_file.hpp"

using namespace cvsep;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string docs_state(const std::string& name) { return std::string(CVSEP_DOCS_DIR) + "/states/" + name; }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("cvsep_cli_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct Failure {
  ErrorKind kind;
  std::string message;
};

Failure parse_failure(const std::string& text) {
  std::istringstream in(text);
  try {
    cli::parse_state(in, "test.state");
  } catch (const Error& e) {
    return {e.kind(), e.what()};
  }
  return {ErrorKind::kNumericalFailure, "no error"};
}

}  // namespace

TEST(StateFile, ParsesEveryDocumentedExample) {
  for (const char* name : {"ghz_like.state", "w_like.state", "indicator.state", "annihilated_ghz.state"}) {
    const StateSpec spec = cli::load_state_file(docs_state(name));
    EXPECT_NO_THROW(spec.build()) << name;
  }
}

TEST(StateFile, ErrorsNameLineAndField) {
  struct Case {
    std::string text;
    std::string needle;
  };
  const std::vector<Case> cases{
      {"family = ghz_like\nsigma = 1\nepsilon = -2\np = 1\n", "test.state:3: epsilon"},
      {"family = ghz_like\nsigma = 1\nepsilon = 1\np = 1\nshift = 1\n", "test.state:5: shift"},
      {"family = ghz_like\nsigma = 1\nsigma = 2\n", "test.state:3: sigma"},
      {"family = ghz\n", "test.state:1: family"},
      {"family = ghz_like\nsigma = one\n", "test.state:2: sigma"},
      {"family = ghz_like\nsigma 1\n", "test.state:2"},
      {"family = ghz_like\ncolour = 1\n", "test.state:2: colour"},
      {"family = ghz_like\nsigma = 1\nepsilon = 1\np = 0.5\n", "delta"},
      {"family = ghz_like\nsigma = 1\nepsilon = 1\np = 1.5\n", "test.state:4: p"},
      {"sigma = 1\n", "family"},
      {"family = ghz_like\nsigma = 1\np = 1\n", "epsilon"},
      {"family = annihilated_ghz\nsigma = 1\nepsilon = 1\np = 1\noperator = raising\n", "test.state:5: operator"},
      {"family = ghz_like\nsigma = 1\nepsilon = 1\np = 1\noperator = ladder\n", "test.state:5: operator"},
  };
  for (const auto& c : cases) {
    const Failure f = parse_failure(c.text);
    EXPECT_EQ(f.kind, ErrorKind::kParseError) << c.text;
    EXPECT_NE(f.message.find(c.needle), std::string::npos) << f.message << " / wanted " << c.needle;
  }
}

TEST(StateFile, CommentsAndWhitespace) {
  std::istringstream in("# leading comment\n\n  family = w_like   # trailing\nsigma=0.5\nepsilon = 0.25\n"
                        "shift = 1\np = 0.75\ndelta = 2\nnoise = box\n");
  const StateSpec s = cli::parse_state(in);
  EXPECT_EQ(s.family, Family::kWLike);
  EXPECT_EQ(s.params.epsilon, 0.25);
  EXPECT_EQ(s.noise.kind, DiagonalNoise::Kind::kBox);
  EXPECT_EQ(s.noise.width, 2.0);
  EXPECT_EQ(s.p, 0.75);
}

TEST(StateFile, FormatRoundTrips) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int i = 0; i < 50; ++i) {
    FamilyParams fp;
    const Family f = static_cast<Family>(i % 4);
    if (f != Family::kIndicator) fp.sigma = u(rng);
    fp.epsilon = u(rng);
    if (f == Family::kWLike) fp.shift = u(rng);
    if (f == Family::kIndicator) fp.beta = u(rng);
    if (f == Family::kAnnihilatedGhz && i % 8 == 3) fp.mode_operator = ModeOperator::kLadder;
    const StateSpec spec = make_spec(f, fp, u(rng), u(rng) / 3.0);
    std::istringstream in(cli::format_state(spec));
    const StateSpec back = cli::parse_state(in);
    EXPECT_EQ(back.family, spec.family);
    EXPECT_EQ(back.p, spec.p);
    EXPECT_EQ(back.noise.width, spec.noise.width);
    EXPECT_EQ(back.noise.kind, spec.noise.kind);
    EXPECT_EQ(cli::format_state(back), cli::format_state(spec));
    for (auto name : StateSpec::parameter_names()) EXPECT_EQ(back.parameter(name), spec.parameter(name)) << name;
  }
}

TEST(Output, NumbersRoundTripBitExactly) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(std::stod(cli::format_number(v)), v);
  }
  EXPECT_EQ(cli::format_number(std::nan("")), "nan");
  EXPECT_EQ(cli::format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Eval, JsonValuesReparseExactly) {
  const auto r = run({"eval", docs_state("ghz_like.state"), "--k", "1,2,3", "--probe", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "eval");
  ASSERT_EQ(j["results"].size(), 3u);
  const double lhs2 = j["results"][1]["lhs"].get<double>();
  const StateSpec spec = cli::load_state_file(docs_state("ghz_like.state"));
  const double direct = criterion_lhs(spec.build(), build_probe(ProbeForm::kGhz, 1.0), 2).lhs;
  EXPECT_EQ(lhs2, direct);
  EXPECT_NEAR(lhs2, 0.063624, 1e-6);
  EXPECT_TRUE(j.contains("conventions"));
  EXPECT_TRUE(j["conventions"].contains("density-convention"));
}

TEST(Eval, CsvHasConventionsAndHeader) {
  const auto r = run({"eval", docs_state("indicator.state"), "--probe", "0.6", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("# ", 0), 0u);
  EXPECT_NE(r.out.find("density-convention"), std::string::npos);
  EXPECT_NE(r.out.find("0.125"), std::string::npos);
}

TEST(Eval, DeterministicAcrossRuns) {
  const std::vector<std::string> args{"eval", docs_state("w_like.state"), "--k", "2,3", "--optimize", "0:3"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Scan, WritesSidecarWithConventions) {
  TempDir dir;
  const std::string out = (dir / "map.csv").string();
  const auto r = run({"scan", docs_state("ghz_like.state"), "--axis1", "epsilon:0.5:6:6", "--axis2", "p:0:1:4",
                      "--k", "2,3", "--x0", "1", "--out", out, "--workers", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "epsilon,p,lhs_2,fired_2,lhs_3,fired_3");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 25);
  ASSERT_TRUE(fs::exists(out + ".meta.json"));
  const json meta = json::parse(slurp(out + ".meta.json"));
  EXPECT_EQ(meta["engine"], std::string(cli::kEngineVersion));
  EXPECT_TRUE(meta.contains("conventions"));
  EXPECT_EQ(meta["cells"], 24);
  EXPECT_EQ(meta["missing_entries"], 0);
  EXPECT_EQ(meta["run"]["workers"], 2);
}

TEST(Scan, OutputIndependentOfWorkerCount) {
  TempDir dir;
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  const std::vector<std::string> base{"scan", docs_state("annihilated_ghz.state"), "--axis1", "epsilon:0.5:3:5",
                                      "--axis2", "p:0:1:3", "--k", "2", "--optimize", "0.1:4", "--format", "json"};
  auto with = [&](const std::string& path, const std::string& workers) {
    auto args = base;
    args.insert(args.end(), {"--out", path, "--workers", workers});
    return run(args);
  };
  ASSERT_EQ(with(a, "1").code, 0);
  ASSERT_EQ(with(b, "3").code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Scan, StdoutWhenNoOutPath) {
  const auto r = run({"scan", docs_state("ghz_like.state"), "--axis1", "p:0:1:3", "--x0", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "p,lhs_2,fired_2");
}

TEST(Threshold, ReportsClosedFormAndAnchor) {
  const auto r = run({"threshold", docs_state("ghz_like.state"), "--param", "epsilon", "--bracket", "1:8", "--x0",
                      "1", "--tol", "1e-9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["value"].get<double>(), 4.0 / std::log(1 + std::sqrt(2.0)), 2e-9);
  EXPECT_TRUE(j.contains("closed_form"));
  EXPECT_TRUE(j.contains("literature_anchor"));
}

TEST(ExitCodes, InputErrors) {
  TempDir dir;
  const std::string bad = dir.write("bad.state", "family = ghz_like\nsigma = 1\n");
  EXPECT_EQ(run({"eval", bad}).code, cli::kExitInput);
  EXPECT_EQ(run({"eval", (dir / "missing.state").string()}).code, cli::kExitInput);
  EXPECT_EQ(run({"eval", docs_state("ghz_like.state"), "--probe", "0"}).code, cli::kExitInput);
  EXPECT_EQ(run({"eval", docs_state("ghz_like.state"), "--k", "4"}).code, cli::kExitInput);
  EXPECT_EQ(run({"eval", docs_state("ghz_like.state"), "--box", "5"}).code, cli::kExitInput);
  EXPECT_EQ(run({"threshold", docs_state("ghz_like.state"), "--param", "epsilon", "--bracket", "5:8", "--x0", "1"})
                .code,
            cli::kExitInput);
  EXPECT_EQ(run({"scan", docs_state("ghz_like.state"), "--axis1", "p:0:1:0"}).code, cli::kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInput);
  EXPECT_EQ(run({"experiment", docs_state("ghz_like.state"), "--tau", "2"}).code, cli::kExitInput);
  const auto err = run({"eval", bad});
  EXPECT_NE(err.err.find("bad.state"), std::string::npos) << err.err;
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(cli::exit_code_for(static_cast<int>(ErrorKind::kNumericalFailure)), cli::kExitNumerical);
  EXPECT_EQ(cli::exit_code_for(static_cast<int>(ErrorKind::kInconsistentTable)), cli::kExitNumerical);
  EXPECT_EQ(cli::exit_code_for(static_cast<int>(ErrorKind::kBracketError)), cli::kExitInput);
  EXPECT_EQ(cli::exit_code_for(static_cast<int>(ErrorKind::kParseError)), cli::kExitInput);
  EXPECT_EQ(run({"--version"}).out, std::string(cli::kEngineVersion) + "\n");
}

TEST(Experiment, ReportsPipeline) {
  const auto r = run({"experiment", docs_state("ghz_like.state"), "--probe", "1", "--xi", "0.3", "--o", "1e-3",
                      "--zeta", "1e-2", "--tau", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const char* key : {"scalar_products", "expansion", "box_criterion", "uncertainty", "efficiency", "conventions"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["conventions"].contains("pauli-labels"));
  EXPECT_NEAR(j["uncertainty"]["xi_bound"].get<double>(), 2.384848e-3, 1e-9);
  const double lhs = j["box_criterion"]["lhs"].get<double>();
  EXPECT_NEAR(j["efficiency"]["lhs"].get<double>(), 0.5 * lhs, 1e-15);
}

TEST(Experiment, EfficiencyLeavesNormalizedValueAlone) {
  const std::vector<std::string> base{"experiment", docs_state("ghz_like.state"), "--probe", "1", "--xi", "0.3"};
  auto with_tau = [&](const std::string& tau) {
    auto args = base;
    args.insert(args.end(), {"--tau", tau});
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
  };
  const json full = with_tau("1"), lossy = with_tau("0.25");
  EXPECT_EQ(lossy["efficiency"]["decomposed_lhs_normalized"], full["expansion"]["decomposed_lhs_normalized"]);
  EXPECT_NEAR(lossy["efficiency"]["decomposed_lhs"].get<double>(),
              0.25 * full["expansion"]["decomposed_lhs"].get<double>(), 1e-18);
}
