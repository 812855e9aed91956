#include <benchmark/benchmark.h>

#include "stransfer/kernels.hpp"
#include "stransfer/nilpotent.hpp"
#include "stransfer/orbital.hpp"

using namespace stransfer;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) ? "omp" : "serial"); }

void BM_GaussHistogram(benchmark::State& st) {
  std::vector<GaussTerm> terms{{2, 4}, {3, 3}, {7, 3}};
  for (auto _ : st) benchmark::DoNotOptimize(gauss_histogram(5, terms, exec_of(st)));
  label(st);
}

void BM_UnitSum(benchmark::State& st) {
  UnitSum s;
  s.d = 9;
  s.alpha = 11;
  s.ka = 7;
  s.beta = 4;
  s.kb = 9;
  for (auto _ : st) benchmark::DoNotOptimize(unit_sum_histogram(5, s, exec_of(st)));
  label(st);
}

void BM_OrbitalPrime(benchmark::State& st) {
  auto cfg = FieldConfig::make(5, 16);
  auto sp = LatticeSpace::make(Side::SPrime, 1, cfg);
  auto y = LieSPrimeElement::n1(ExtElement(cfg.num(2), cfg.num(3), cfg.extension().delta_sq), cfg.gamma);
  auto f = CosetFunction::ball(sp, coords(y), 7);
  for (auto _ : st) benchmark::DoNotOptimize(orbital_n1_prime(y, f, MeasureConvention::IntegralModel, exec_of(st)));
  label(st);
}

void BM_NilpotentScan(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(nilpotent_scan(1, 4, 4, exec_of(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_GaussHistogram)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnitSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrbitalPrime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NilpotentScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
