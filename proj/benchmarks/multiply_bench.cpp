#include <benchmark/benchmark.h>

#include "trachtenberg/opcount.hpp"
#include "trachtenberg/oracle.hpp"
#include "trachtenberg/random.hpp"
#include "trachtenberg/rules.hpp"
#include "trachtenberg/trace.hpp"

namespace {

using namespace trachtenberg;

DigitString operand(std::int64_t length) {
  Generator generator(static_cast<std::uint64_t>(length));
  return random_multiplicand(generator, static_cast<std::size_t>(length));
}

// Multiplier comes from the second argument.
void BM_MultiplyByRule(benchmark::State& state) {
  const DigitString a = operand(state.range(0));
  const Multiplier m(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply_by_rule(a, m));
  }
}

void BM_ReferenceMultiply(benchmark::State& state) {
  const DigitString a = operand(state.range(0));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_multiply(a, m));
  }
}

void BM_CountTraceOps(benchmark::State& state) {
  const ComputationTrace trace = multiply_by_rule(operand(state.range(0)), Multiplier(7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_trace_ops(trace));
  }
}

void BM_RenderTable(benchmark::State& state) {
  const ComputationTrace trace = multiply_by_rule(operand(state.range(0)), Multiplier(3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(render_table(trace));
  }
}

void lengths_and_multipliers(benchmark::internal::Benchmark* b) {
  for (const int length : {10, 20, 40, 80}) {
    for (const int m : {3, 6, 9, 12}) {
      b->Args({length, m});
    }
  }
}

BENCHMARK(BM_MultiplyByRule)->Apply(lengths_and_multipliers);
BENCHMARK(BM_ReferenceMultiply)->Apply(lengths_and_multipliers);
BENCHMARK(BM_CountTraceOps)->Arg(10)->Arg(40);
BENCHMARK(BM_RenderTable)->Arg(4)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
