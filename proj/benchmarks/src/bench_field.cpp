#include <benchmark/benchmark.h>

#include <random>

#include "supreg/prime_field.hpp"

using namespace supreg;

static void BM_FieldMulAdd(benchmark::State& state) {
  const PrimeField f(static_cast<u64>(state.range(0)));
  std::mt19937_64 rng(1);
  FieldElement x = f.element(static_cast<std::int64_t>(rng() % f.modulus()));
  const FieldElement y = f.element(static_cast<std::int64_t>(rng() % f.modulus()));
  for (auto _ : state) {
    x = x * y + f.one();
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_FieldMulAdd)->Arg(257)->Arg(1000003)->Arg(2305843009213693951LL);

static void BM_FieldInverse(benchmark::State& state) {
  const PrimeField f(static_cast<u64>(state.range(0)));
  u64 v = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inv(f.from_u64(v)));
    v = v + 1 == f.modulus() ? 1 : v + 1;
  }
}
BENCHMARK(BM_FieldInverse)->Arg(257)->Arg(1000003);

static void BM_SqrtMod(benchmark::State& state) {
  const PrimeField f(static_cast<u64>(state.range(0)));
  const FieldElement square = f.element(12345) * f.element(12345);
  for (auto _ : state) benchmark::DoNotOptimize(sqrt_mod(square));
}
BENCHMARK(BM_SqrtMod)->Arg(1000003)->Arg(2305843009213693951LL);
