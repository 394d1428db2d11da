#include <benchmark/benchmark.h>

#include <string>

#include "gwlp/counting.hpp"
#include "gwlp/io.hpp"
#include "gwlp/removal.hpp"
#include "gwlp/wstack.hpp"

using namespace gwlp;

namespace {

Fraction fixture(const char* name) { return io::read_oa_file(std::string(GWLP_DATA_DIR) + "/" + name); }

void BM_BuildWStack(benchmark::State& state) {
  const Fraction f = fixture("oa18_2_3_3_3.txt");
  for (auto _ : state) benchmark::DoNotOptimize(build_wstack(f));
}
BENCHMARK(BM_BuildWStack);

void BM_BuildWStackTwoLevel(benchmark::State& state) {
  const Fraction f = fixture("pb12.txt");
  for (auto _ : state) benchmark::DoNotOptimize(build_wstack(f));
}
BENCHMARK(BM_BuildWStackTwoLevel);

void BM_TwoLevelRecursion(benchmark::State& state) {
  const Fraction f = fixture("pb12.txt");
  for (auto _ : state) benchmark::DoNotOptimize(twolevel_wstack(f));
}
BENCHMARK(BM_TwoLevelRecursion);

void BM_GwlpDirect(benchmark::State& state) {
  const Fraction f = fixture("oa16_2_4_4_2.txt");
  for (auto _ : state) benchmark::DoNotOptimize(counting::gwlp_direct(f));
}
BENCHMARK(BM_GwlpDirect);

void BM_ExhaustivePB12(benchmark::State& state) {
  const WStack w = build_wstack(fixture("pb12.txt"));
  ExhaustiveOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  const auto p = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(w, p, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binomial(12, p)));
}
BENCHMARK(BM_ExhaustivePB12)->Args({3, 1})->Args({5, 1})->Args({5, 4})->Args({6, 4});

void BM_ExhaustiveOA16(benchmark::State& state) {
  const WStack w = build_wstack(fixture("oa16_2_4_4_2.txt"));
  ExhaustiveOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(w, static_cast<std::size_t>(state.range(0)), opts));
}
BENCHMARK(BM_ExhaustiveOA16)->Args({4, 1})->Args({4, 4});

}  // namespace

BENCHMARK_MAIN();
