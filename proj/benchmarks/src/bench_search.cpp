#include <benchmark/benchmark.h>

#include "supreg/constructions.hpp"
#include "supreg/search.hpp"

using namespace supreg;

static void BM_ExhaustiveCount(benchmark::State& state) {
  const PrimeField f(static_cast<u64>(state.range(0)));
  SearchOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive(7, f, SearchMode::Count, opts).count);
}
BENCHMARK(BM_ExhaustiveCount)->Arg(17)->Arg(19)->Arg(23)->Unit(benchmark::kMillisecond);

static void BM_MinForbidden6(benchmark::State& state) {
  const PrimeField f(static_cast<u64>(state.range(0)));
  SearchOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(min_forbidden(6, f, opts).minimum);
}
BENCHMARK(BM_MinForbidden6)->Arg(31)->Arg(61)->Arg(127)->Unit(benchmark::kMillisecond);

static void BM_RandomOrder10(benchmark::State& state) {
  const PrimeField f(257);
  RandomOptions ro;
  ro.seed = 1;
  ro.trials = static_cast<std::uint64_t>(state.range(0));
  ro.tail = 1;
  ro.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(random_prefix(10, f, ro).hits);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomOrder10)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_Construct(benchmark::State& state) {
  const PrimeField f(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(construct(6, f).values());
}
BENCHMARK(BM_Construct)->Arg(1009)->Arg(1000003);
