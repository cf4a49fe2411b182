#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvsep/error.hpp"
#include "cvsep/optimize.hpp"
#include "cvsep/reference.hpp"
#include "cvsep/scan.hpp"
#include "cvsep/state_spec.hpp"

using namespace cvsep;

namespace {

StateSpec ghz_spec(double sigma, double eps, double p, double delta = 1.0) {
  FamilyParams fp;
  fp.sigma = sigma;
  fp.epsilon = eps;
  return make_spec(Family::kGhzLike, fp, delta, p);
}

StateSpec w_spec(double eps, double p) {
  FamilyParams fp;
  fp.sigma = 0.5;
  fp.epsilon = eps;
  fp.shift = 1.0;
  return make_spec(Family::kWLike, fp, 1.0, p);
}

ProbeRule fixed(double x0) {
  ProbeRule r;
  r.mode = ProbeRule::Mode::kFixed;
  r.x0 = x0;
  return r;
}

ProbeRule optimized(double lo = 0.1, double hi = 3.0) {
  ProbeRule r;
  r.mode = ProbeRule::Mode::kOptimized;
  r.lo = lo;
  r.hi = hi;
  return r;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kNumericalFailure;
}

}  // namespace

TEST(GoldenSection, FindsParabolaPeak) {
  const double x = golden_section_max([](double t) { return -(t - 0.3) * (t - 0.3); }, -1, 2, 1e-9);
  EXPECT_NEAR(x, 0.3, 1e-8);
}

TEST(Optimize, PureGhzOptimumMatchesClosedForm) {
  for (double eps : {0.5, 1.0, 2.0}) {
    const CvState rho = ghz_spec(1, eps, 1).build();
    ProbeSearch search;
    search.lo = 0.1;
    search.hi = 3.0;
    const auto opt = optimize_probe(rho, 2, search);
    // Dense independent scan of the closed form.
    double best = -1e300, best_x = 0;
    for (int i = 0; i <= 200000; ++i) {
      const double x0 = 0.1 + 2.9 * i / 200000.0;
      const double v = reference::ghz_lhs_k2(1, eps, x0);
      if (v > best) {
        best = v;
        best_x = x0;
      }
    }
    // The dense scan brackets the optimum from below to ~1e-10.
    EXPECT_GE(opt.result.lhs, best - 1e-14);
    EXPECT_LE(opt.result.lhs, best + 1e-9);
    EXPECT_NEAR(opt.x0, best_x, 1e-4);
  }
}

TEST(Optimize, OptimizedDominatesFixedProbes) {
  for (double eps : {0.3, 1.0, 4.0}) {
    for (double p : {0.3, 0.7, 1.0}) {
      const StateSpec spec = ghz_spec(1, eps, p);
      const double opt = evaluate_spec(spec, optimized(), 2).result.lhs;
      for (double x0 : {0.1, 0.4, 0.77, 1.0, 1.9, 3.0}) {
        EXPECT_GE(opt, evaluate_spec(spec, fixed(x0), 2).result.lhs - 1e-14) << eps << " " << p << " " << x0;
      }
    }
  }
}

TEST(Optimize, PureNoiseIsNeverDetected) {
  for (double delta : {0.3, 1.0, 3.0}) {
    const CvState rho = ghz_spec(1, 1, 0.0, delta).build();
    for (int k = 1; k <= 3; ++k) {
      ProbeSearch search;
      const auto opt = optimize_probe(rho, k, search);
      EXPECT_EQ(opt.result.verdict, Verdict::kNotViolated);
      EXPECT_LE(opt.result.lhs, 0.0);
    }
  }
}

TEST(Optimize, OptimizedLhsDecreasesWithEpsilon) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 40; ++i) {
    const double eps = 0.1 + (8.0 - 0.1) * i / 40.0;
    const double v = evaluate_spec(ghz_spec(1, eps, 1), optimized(), 2).result.lhs;
    EXPECT_LE(v, prev + 1e-14) << eps;
    prev = v;
  }
}

TEST(Optimize, GeneralSearchDoesNotLoseGround) {
  const CvState rho = ghz_spec(1, 1, 0.8).build();
  const Probe start = build_probe(ProbeForm::kGhz, 0.7);
  const double start_lhs = criterion_lhs(rho, start, 2).lhs;
  const auto opt = optimize_probe_general(rho, 2, start, 0.5, 4);
  EXPECT_GE(opt.result.lhs, start_lhs - 1e-15);
  EXPECT_TRUE(std::isnan(opt.x0));
}

TEST(Optimize, NoValidProbeAnywhere) {
  const CvState rho = ghz_spec(1, 1, 1).build();
  ProbeSearch search;
  search.box_width = 10.0;  // boxes overlap for every x0 in the default range
  EXPECT_EQ(kind_of([&] { optimize_probe(rho, 2, search); }), ErrorKind::kNoValidProbe);
}

TEST(Threshold, GhzEpsilonMatchesClosedForm) {
  ThresholdQuery q;
  q.base = ghz_spec(1, 1, 1);
  q.parameter = "epsilon";
  q.probe = fixed(1.0);
  q.tolerance = 1e-9;
  const double want = reference::ghz_epsilon_threshold(1.0);
  for (auto [lo, hi] : {std::pair{1.0, 8.0}, {3.0, 6.0}, {4.5, 4.6}, {4.0, 20.0}}) {
    q.lo = lo;
    q.hi = hi;
    EXPECT_NEAR(find_threshold(q).value, want, 2e-9) << lo << ":" << hi;
  }
}

TEST(Threshold, BracketWithoutSignChange) {
  ThresholdQuery q;
  q.base = ghz_spec(1, 1, 1);
  q.parameter = "epsilon";
  q.probe = fixed(1.0);
  q.lo = 5;
  q.hi = 8;
  EXPECT_EQ(kind_of([&] { find_threshold(q); }), ErrorKind::kBracketError);
  EXPECT_EQ(kind_of([] { find_threshold([](double) { return 1.0; }, 0, 1); }), ErrorKind::kBracketError);
}

TEST(Threshold, IndicatorPAgainstLiteralForm) {
  FamilyParams fp;
  fp.epsilon = 1.0;
  fp.beta = 1.0;
  ThresholdQuery q;
  q.base = make_spec(Family::kIndicator, fp, 1.5, 0.5);
  q.parameter = "p";
  q.lo = 0.01;
  q.hi = 1.0;
  q.probe = fixed(0.6);
  q.tolerance = 1e-10;
  EXPECT_NEAR(find_threshold(q).value, reference::indicator_p_threshold(1, 1, 1.5), 1e-9);
  EXPECT_NEAR(reference::indicator_p_threshold(1, 1, 1.5), 3.0 / (3.0 + 3.375), 1e-15);
}

TEST(Threshold, UnknownParameter) {
  ThresholdQuery q;
  q.base = ghz_spec(1, 1, 1);
  q.parameter = "gamma";
  q.probe = fixed(1.0);
  EXPECT_EQ(kind_of([&] { find_threshold(q); }), ErrorKind::kInvalidArgument);
}

TEST(Scan, AgreesWithThresholdAlongP) {
  ScanSpec s;
  s.base = ghz_spec(1, 1, 1, 1.0);
  s.axis1 = {"p", 0.0, 1.0, 101};
  s.ks = {2};
  s.probe = fixed(1.0);
  const DetectionMap map = scan(s);
  ASSERT_EQ(map.cells.size(), 101u);

  ThresholdQuery q;
  q.base = s.base;
  q.parameter = "p";
  q.lo = 0.0;
  q.hi = 1.0;
  q.probe = s.probe;
  q.tolerance = 1e-10;
  const double p_star = find_threshold(q).value;
  for (const auto& cell : map.cells) {
    const double p = cell.coords[0];
    if (std::abs(p - p_star) < 1e-8) continue;
    EXPECT_EQ(cell.entries[0].fired, p > p_star) << p;
  }
}

TEST(Scan, ZeroMixingRowNeverFires) {
  ScanSpec s;
  s.base = ghz_spec(1, 1, 1, 0.7);
  s.axis1 = {"epsilon", 0.1, 6.0, 12};
  s.axis2 = ScanAxis{"p", 0.0, 1.0, 6};
  s.ks = {1, 2, 3};
  s.probe = optimized();
  const DetectionMap map = scan(s);
  ASSERT_EQ(map.cells.size(), 72u);
  for (const auto& cell : map.cells) {
    if (cell.coords[1] != 0.0) continue;
    for (const auto& e : cell.entries) EXPECT_FALSE(e.fired);
    EXPECT_EQ(cell.strongest_k, 0);
  }
  // k = 1 can never fire (single term equals the coherence).
  for (const auto& cell : map.cells) EXPECT_FALSE(cell.entries[0].fired);
}

TEST(Scan, RowMajorOrderAndWorkerIndependence) {
  ScanSpec s;
  s.base = ghz_spec(1, 1, 1, 1.0);
  s.axis1 = {"epsilon", 0.2, 5.0, 9};
  s.axis2 = ScanAxis{"p", 0.0, 1.0, 7};
  s.ks = {2, 3};
  s.probe = optimized();
  s.workers = 1;
  const DetectionMap a = scan(s);
  s.workers = 4;
  const DetectionMap b = scan(s);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].coords, b.cells[i].coords);
    EXPECT_EQ(a.cells[i].x0, b.cells[i].x0);
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_EQ(a.cells[i].entries[j].lhs, b.cells[i].entries[j].lhs);
      EXPECT_EQ(a.cells[i].entries[j].fired, b.cells[i].entries[j].fired);
    }
  }
  EXPECT_EQ(a.cells[0].coords, (std::vector<double>{0.2, 0.0}));
  EXPECT_EQ(a.cells[1].coords, (std::vector<double>{0.2, 1.0 / 6.0}));
  EXPECT_EQ(a.cells[7].coords[0], 0.8);
}

TEST(Scan, InvalidCellsAreTaggedMissing) {
  ScanSpec s;
  s.base = ghz_spec(1, 1, 1, 1.0);
  s.axis1 = {"x0", -1.0, 1.0, 3};  // x0 = 0 collapses the GHZ probe
  s.ks = {2};
  s.probe = fixed(1.0);
  const DetectionMap map = scan(s);
  ASSERT_EQ(map.cells.size(), 3u);
  EXPECT_FALSE(map.cells[0].entries[0].missing);
  EXPECT_TRUE(map.cells[1].entries[0].missing);
  EXPECT_TRUE(std::isnan(map.cells[1].entries[0].lhs));
  EXPECT_NE(map.cells[1].entries[0].error.find("invalid-probe"), std::string::npos);
  EXPECT_FALSE(map.cells[2].entries[0].missing);
}

TEST(Scan, SpecValidation) {
  ScanSpec s;
  s.base = ghz_spec(1, 1, 1);
  s.axis1 = {"p", 0, 1, 0};
  EXPECT_THROW(s.validate(), Error);
  s.axis1 = {"p", 0, 1, 513};
  EXPECT_THROW(s.validate(), Error);
  s.axis1 = {"bogus", 0, 1, 3};
  EXPECT_THROW(s.validate(), Error);
  s.axis1 = {"p", 0, 1, 3};
  s.axis2 = ScanAxis{"p", 0, 1, 3};
  EXPECT_THROW(s.validate(), Error);
  s.axis2.reset();
  s.ks = {4};
  EXPECT_THROW(s.validate(), Error);
  s.ks = {2};
  EXPECT_NO_THROW(s.validate());
  s.axis1 = {"x0", 0.5, 1, 3};
  s.probe = optimized();
  EXPECT_THROW(s.validate(), Error);
}

// Narrow W-like kernel: the central probe detects wherever the displaced
// probe does, and by a larger margin.
TEST(WLike, CentralProbeDominatesAtSmallEpsilon) {
  for (double eps : {0.1, 0.25, 0.5}) {
    for (int i = 0; i <= 20; ++i) {
      const double p = i / 20.0;
      const StateSpec spec = w_spec(eps, p);
      const auto centre = evaluate_spec(spec, fixed(0.0), 2).result;
      const auto displaced = evaluate_spec(spec, fixed(1.5), 2).result;
      if (displaced.verdict == Verdict::kViolated) {
        EXPECT_EQ(centre.verdict, Verdict::kViolated) << eps << " " << p;
      }
      if (centre.verdict == Verdict::kViolated || displaced.verdict == Verdict::kViolated) {
        EXPECT_GT(centre.lhs, displaced.lhs) << eps << " " << p;
      }
    }
  }
}

TEST(WLike, DisplacedProbeWinsOnceTheKernelWidens) {
  const StateSpec spec = w_spec(1.0, 1.0);
  EXPECT_EQ(evaluate_spec(spec, fixed(1.5), 2).result.verdict, Verdict::kViolated);
  EXPECT_EQ(evaluate_spec(spec, fixed(0.0), 2).result.verdict, Verdict::kNotViolated);
}

TEST(StateSpec, ParameterAccess) {
  StateSpec s = ghz_spec(1, 1, 0.5, 2.0);
  EXPECT_EQ(s.parameter("delta"), 2.0);
  s.set_parameter("sigma", 3.0);
  EXPECT_EQ(s.params.sigma, 3.0);
  EXPECT_THROW(s.set_parameter("nope", 1), Error);
  EXPECT_EQ(w_spec(1, 1).probe_form(), ProbeForm::kW);
  EXPECT_EQ(s.probe_form(), ProbeForm::kGhz);
}
