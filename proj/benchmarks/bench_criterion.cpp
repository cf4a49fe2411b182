#include <benchmark/benchmark.h>

#include "cvsep/criterion.hpp"
#include "cvsep/experiment.hpp"
#include "cvsep/optimize.hpp"
#include "cvsep/scan.hpp"
#include "cvsep/setpart.hpp"
#include "cvsep/state_spec.hpp"

using namespace cvsep;

namespace {

StateSpec ghz_spec(double p) {
  FamilyParams fp;
  return make_spec(Family::kGhzLike, fp, 1.0, p);
}

void BM_Partitions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t total = 0;
    for (int k = 1; k <= n; ++k) total += enumerate_partitions(n, k).size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_Partitions)->DenseRange(4, 10, 2);

void BM_SharpLhs(benchmark::State& state) {
  const CvState rho = ghz_spec(0.8).build();
  const Probe probe = build_probe(ProbeForm::kGhz, 1.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(criterion_lhs(rho, probe, k).lhs);
}
BENCHMARK(BM_SharpLhs)->DenseRange(1, 3);

void BM_BoxLhs(benchmark::State& state) {
  const CvState rho = ghz_spec(0.8).build();
  const Probe probe = build_box_probe(ProbeForm::kGhz, 1.0, 0.0, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(criterion_lhs_box(rho, probe, 2).lhs);
}
BENCHMARK(BM_BoxLhs)->Unit(benchmark::kMicrosecond);

void BM_BoxLhsWLike(benchmark::State& state) {
  FamilyParams fp;
  fp.sigma = 0.5;
  fp.epsilon = 0.5;
  fp.shift = 1.0;
  const CvState rho = make_spec(Family::kWLike, fp, 1.0, 0.8).build();
  const Probe probe = build_box_probe(ProbeForm::kW, 0.0, 1.0, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(criterion_lhs_box(rho, probe, 2).lhs);
}
BENCHMARK(BM_BoxLhsWLike)->Unit(benchmark::kMicrosecond);

void BM_OptimizeProbe(benchmark::State& state) {
  const CvState rho = ghz_spec(0.8).build();
  ProbeSearch search;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_probe(rho, 2, search).x0);
}
BENCHMARK(BM_OptimizeProbe)->Unit(benchmark::kMicrosecond);

void BM_Scan(benchmark::State& state) {
  ScanSpec spec;
  spec.base = ghz_spec(1.0);
  spec.axis1 = {"epsilon", 0.1, 6.0, 50};
  spec.axis2 = ScanAxis{"p", 0.0, 1.0, 50};
  spec.ks = {2, 3};
  spec.probe.mode = ProbeRule::Mode::kOptimized;
  spec.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan(spec).cells.size());
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ExperimentPipeline(benchmark::State& state) {
  const CvState rho = ghz_spec(0.9).build();
  const Probe probe = build_box_probe(ProbeForm::kGhz, 1.0, 0.0, 0.3);
  for (auto _ : state) {
    const auto table = pauli_expectations(effective_qubit_state(rho, probe));
    benchmark::DoNotOptimize(table.decomposed_lhs);
  }
}
BENCHMARK(BM_ExperimentPipeline)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
