// Serial reference vs OpenMP kernels on free-group balls.

#include <benchmark/benchmark.h>

#include "xprod/crossed.hpp"
#include "xprod/kernels.hpp"
#include "xprod/posdef.hpp"

using namespace xprod;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(1) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

void BM_GramHaagerup(benchmark::State& state) {
  const auto f2 = GroupSpec::free(2);
  const auto b = ball(f2, static_cast<std::size_t>(state.range(0)));
  const auto f = haagerup(f2, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::gram_assemble(f2, b.elements(), f.evaluator(), policy_of(state)));
  }
  state.counters["points"] = static_cast<double>(b.size());
}

void BM_CountTranslates(benchmark::State& state) {
  const auto f2 = GroupSpec::free(2);
  const auto b = ball(f2, static_cast<std::size_t>(state.range(0)));
  const auto t = GroupElement(Word{1, 2, -1});
  const kernels::Membership member = [&b](const GroupElement& g) { return b.contains(g); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::count_translates(f2, b.elements(), t, member, policy_of(state)));
  }
  state.counters["points"] = static_cast<double>(b.size());
}

void BM_TranslateAssemble(benchmark::State& state) {
  const auto f2 = GroupSpec::free(2);
  const CrossedContext ctx(f2, static_cast<std::size_t>(state.range(0)), CoeffAlgebra::full(2));
  Rng rng(1);
  std::vector<TranslationTerm> terms;
  const auto b2 = ball(f2, 2);
  for (const auto& t : b2.elements()) terms.push_back({t, random_gaussian(2, 2, rng)});
  const kernels::InverseAction alpha_inv = [](std::size_t, const Matrix& r) { return r; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::translate_assemble(ctx.window(), 2, terms, alpha_inv, policy_of(state)));
  }
  state.counters["points"] = static_cast<double>(ctx.window_size());
}

}  // namespace

// Second argument: 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_GramHaagerup)->ArgsProduct({{3, 4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountTranslates)->ArgsProduct({{5, 7, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranslateAssemble)->ArgsProduct({{3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
