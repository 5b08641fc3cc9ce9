#include <benchmark/benchmark.h>

#include <vector>

#include "supreg/constructions.hpp"
#include "supreg/forbidden.hpp"
#include "supreg/minor_engine.hpp"
#include "supreg/symbolic.hpp"
#include "supreg/toeplitz.hpp"

using namespace supreg;

namespace {

ToeplitzLT order10() { return witness(10, PrimeField(173)); }

}  // namespace

static void BM_IsSuperregular(benchmark::State& state) {
  const ToeplitzLT m = order10();
  for (auto _ : state) benchmark::DoNotOptimize(is_superregular(m).verdict);
}
BENCHMARK(BM_IsSuperregular)->Unit(benchmark::kMillisecond);

static void BM_IsSuperregularIncremental(benchmark::State& state) {
  const ToeplitzLT m = order10();
  for (auto _ : state) benchmark::DoNotOptimize(is_superregular_incremental(m).verdict);
}
BENCHMARK(BM_IsSuperregularIncremental)->Unit(benchmark::kMillisecond);

static void BM_Determinant(benchmark::State& state) {
  const ToeplitzLT m = order10();
  const int k = static_cast<int>(state.range(0));
  std::vector<int> idx;
  for (int i = 1; i <= k; ++i) idx.push_back(i);
  const MinorIndex minor(idx, idx);
  for (auto _ : state) benchmark::DoNotOptimize(det(m, minor));
}
BENCHMARK(BM_Determinant)->DenseRange(2, 10, 4);

static void BM_ForbiddenSet(benchmark::State& state) {
  const ToeplitzLT m = order10();
  const int gamma = static_cast<int>(state.range(0));
  const std::vector<FieldElement> prefix(m.entries().begin(), m.entries().begin() + gamma - 1);
  for (auto _ : state) benchmark::DoNotOptimize(forbidden_set(m.field(), prefix, gamma).values.size());
}
BENCHMARK(BM_ForbiddenSet)->DenseRange(6, 10, 2)->Unit(benchmark::kMicrosecond);

static void BM_EngineLeaf(benchmark::State& state) {
  const ToeplitzLT m = order10();
  const int gamma = static_cast<int>(state.range(0));
  const MinorPlan plan(gamma);
  const FastField ff(m.field().modulus());
  MinorEvaluator ev(plan, ff);
  const auto values = m.values();
  ev.load_prefix(std::span<const u64>(values.data(), static_cast<std::size_t>(gamma - 1)));
  const auto n = plan.linear(gamma).size();
  std::vector<u64> c(n), d(n);
  for (auto _ : state) {
    ev.eval_linear(gamma, c, d);
    benchmark::DoNotOptimize(c.data());
  }
  state.counters["minors"] = static_cast<double>(n);
}
BENCHMARK(BM_EngineLeaf)->DenseRange(6, 10, 2);

static void BM_Census(benchmark::State& state) {
  const int gamma = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(gamma).distinct);
}
BENCHMARK(BM_Census)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);
