#include <benchmark/benchmark.h>

#include <random>

#include "qrs/kernels.hpp"
#include "qrs/oracle.hpp"

using namespace qrs;

namespace {

const RootSystem& system_for(int which) {
  static const RootSystem kSystems[] = {build_root_system("E6"), build_root_system("E7"), build_root_system("E8"),
                                        build_root_system("B4"), build_root_system("D5")};
  return kSystems[which];
}

const char* kNames[] = {"E6", "E7", "E8", "B4", "D5"};

template <FineCountTable (*F)(const RootSystem&)>
void BM_FineCount(benchmark::State& state) {
  const RootSystem& r = system_for(static_cast<int>(state.range(0)));
  state.SetLabel(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(F(r).total());
}

template <std::vector<RootSet> (*F)(const RootSystem&)>
void BM_BruteForce(benchmark::State& state) {
  const RootSystem& r = system_for(static_cast<int>(state.range(0)));
  state.SetLabel(kNames[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(F(r).size());
}

template <std::vector<SimpleSubset> (*F)(const RootSystem&, const RootSet&)>
void BM_GenFamily(benchmark::State& state) {
  const RootSystem& r = system_for(static_cast<int>(state.range(0)));
  state.SetLabel(kNames[state.range(0)]);
  std::mt19937_64 rng(7);
  std::vector<RootSet> sets;
  for (int i = 0; i < 16; ++i) sets.push_back(oracle::random_halfspace_set(r, rng));
  for (auto _ : state)
    for (const RootSet& phi : sets) benchmark::DoNotOptimize(F(r, phi).size());
}

} // namespace

BENCHMARK(BM_FineCount<serial::fine_count_table>)->Name("fine_count/serial")->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FineCount<parallel::fine_count_table>)->Name("fine_count/parallel")->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BruteForce<serial::brute_force_inversion_sets>)->Name("brute_force/serial")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForce<parallel::brute_force_inversion_sets>)->Name("brute_force/parallel")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GenFamily<serial::gen_family>)->Name("gen_family/serial")->Arg(0)->Arg(2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GenFamily<parallel::gen_family>)->Name("gen_family/parallel")->Arg(0)->Arg(2)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
