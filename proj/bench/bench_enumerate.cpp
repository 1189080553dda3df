// Serial reference vs OpenMP kernels: FPL enumeration and the gyration permutation.
#include <benchmark/benchmark.h>

#include "gyralab/fplenum.hpp"
#include "gyralab/gyration.hpp"

using namespace gyralab;

namespace {

DihedralDomain domain_for(int which) {
  switch (which) {
    case 0: return build_domain(square_spec(5));
    case 1: return build_domain(square_spec(6));
    default: {
      DomainSpec s;
      s.Lx = 8;
      s.Ly = 8;
      s.a = {0, 2, 2, 2};
      return build_domain(s);
    }
  }
}

void BM_EnumerateSerial(benchmark::State& st) {
  const auto d = domain_for(static_cast<int>(st.range(0)));
  size_t n = 0;
  for (auto _ : st) {
    auto v = enumerate_fpl_serial(d, Sector::All);
    n = v.size();
    benchmark::DoNotOptimize(v);
  }
  st.counters["configs"] = static_cast<double>(n);
  st.SetLabel(d.name());
}

void BM_EnumerateParallel(benchmark::State& st) {
  const auto d = domain_for(static_cast<int>(st.range(0)));
  const int jobs = static_cast<int>(st.range(1));
  size_t n = 0;
  for (auto _ : st) {
    auto v = enumerate_fpl_parallel(d, Sector::All, jobs);
    n = v.size();
    benchmark::DoNotOptimize(v);
  }
  st.counters["configs"] = static_cast<double>(n);
  st.SetLabel(d.name());
}

void BM_GyrationSerial(benchmark::State& st) {
  const auto d = domain_for(static_cast<int>(st.range(0)));
  const auto all = enumerate_fpl(d, Sector::All);
  for (auto _ : st) benchmark::DoNotOptimize(gyration_permutation_serial(d, all));
  st.SetLabel(d.name());
}

void BM_GyrationParallel(benchmark::State& st) {
  const auto d = domain_for(static_cast<int>(st.range(0)));
  const auto all = enumerate_fpl(d, Sector::All);
  const int jobs = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(gyration_permutation_parallel(d, all, jobs));
  st.SetLabel(d.name());
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->ArgsProduct({{0, 1, 2}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GyrationSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GyrationParallel)->ArgsProduct({{0, 1, 2}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
