#include <benchmark/benchmark.h>

#include <random>

#include "shiftlab/automaton.hpp"
#include "shiftlab/engine.hpp"
#include "shiftlab/entropy.hpp"
#include "shiftlab/gf2.hpp"
#include "shiftlab/tmp.hpp"
#include "shiftlab/zoo.hpp"

using namespace shiftlab;

namespace {

Subshift golden_mean() {
  Group z = Group::integer_lattice(1);
  return hard_square(z, FiniteSubset::of(z, {GroupElement{{1}}}));
}

void BM_BallEnumerationF2(benchmark::State& state) {
  Group f2 = Group::free_group(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(f2.ball(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BallEnumerationF2)->Arg(4)->Arg(6)->Arg(8);

void BM_CountGoldenExact(benchmark::State& state) {
  Subshift golden = golden_mean();
  FiniteSubset f = golden.group.folner_window(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(count_admissible(golden, f, ExactZ{}));
}
BENCHMARK(BM_CountGoldenExact)->Arg(16)->Arg(64)->Arg(256);

void BM_CountGoldenDfs(benchmark::State& state) {
  Subshift golden = golden_mean();
  FiniteSubset f = golden.group.folner_window(static_cast<int>(state.range(0)));
  BudgetConfig budget;
  budget.nodes = 1u << 30;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        count_admissible(golden, f, LocalMargin{1}, budget));
}
BENCHMARK(BM_CountGoldenDfs)->Arg(12)->Arg(18)->Arg(24);

void BM_CountGoldenDfsThreads(benchmark::State& state) {
  Subshift golden = golden_mean();
  FiniteSubset f = golden.group.folner_window(24);
  BudgetConfig budget;
  budget.nodes = 1u << 30;
  budget.threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        count_admissible(golden, f, LocalMargin{1}, budget));
}
BENCHMARK(BM_CountGoldenDfsThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_CountCrossKernel(benchmark::State& state) {
  Subshift cross = five_dot_cross();
  FiniteSubset b = cross.group.ball(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(count_admissible(cross, b, LocalMargin{1}));
}
BENCHMARK(BM_CountCrossKernel)->Arg(1)->Arg(2)->Arg(3);

void BM_CountMatchings(benchmark::State& state) {
  Subshift pm = perfect_matchings();
  FiniteSubset b = pm.group.ball(static_cast<int>(state.range(0)));
  BudgetConfig budget;
  budget.nodes = 1u << 30;
  for (auto _ : state)
    benchmark::DoNotOptimize(count_admissible(pm, b, LocalMargin{0}, budget));
}
BENCHMARK(BM_CountMatchings)->Arg(1)->Arg(2);

void BM_PairSearchMatchings(benchmark::State& state) {
  Subshift pm = perfect_matchings();
  FiniteSubset a = pm.group.ball(1);
  FiniteSubset w = pm.group.ball(static_cast<int>(state.range(0)));
  BudgetConfig budget;
  budget.nodes = 1u << 30;
  budget.threads = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        find_interchangeable_pair(pm, a, w, LocalMargin{0}, budget));
}
BENCHMARK(BM_PairSearchMatchings)
    ->Args({2, 1})
    ->Args({2, 8})
    ->Args({3, 1})
    ->Args({3, 8});

void BM_Gf2Kernel(benchmark::State& state) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> bit(0, 1);
  std::size_t n = static_cast<std::size_t>(state.range(0));
  BitMatrix m(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < 2 * n; ++c) m.set(r, c, bit(rng));
  for (auto _ : state) benchmark::DoNotOptimize(m.kernel_basis());
}
BENCHMARK(BM_Gf2Kernel)->Arg(64)->Arg(256)->Arg(1024);

void BM_MicrostateTrace(benchmark::State& state) {
  Subshift golden = golden_mean();
  ZAutomaton a = ZAutomaton::build(golden);
  for (auto _ : state)
    benchmark::DoNotOptimize(a.cyclic_count(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MicrostateTrace)->Arg(16)->Arg(64)->Arg(256);

void BM_HomoclinicKernelLedrappier(benchmark::State& state) {
  Subshift led = ledrappier();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        homoclinic_search(led, 0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_HomoclinicKernelLedrappier)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
