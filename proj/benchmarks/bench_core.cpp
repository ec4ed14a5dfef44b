#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ngc/dca.hpp"
#include "ngc/exact.hpp"
#include "ngc/formulation.hpp"
#include "ngc/lp.hpp"

namespace {

// Deterministic instance with `pieces` piece types on a side x side stock.
ngc::Instance synthetic(int side, int pieces, unsigned seed) {
  std::mt19937 rng(seed);
  auto draw = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  ngc::Instance inst;
  inst.name = "synthetic";
  inst.stock_length = side;
  inst.stock_width = side;
  for (int i = 0; i < pieces; ++i) {
    const int l = draw(side / 5, side / 2);
    const int w = draw(side / 5, side / 2);
    inst.pieces.push_back({l, w, l * w + draw(0, l * w / 3), draw(1, 3)});
  }
  return inst;
}

std::vector<double> negated_values(const ngc::Formulation& f) {
  std::vector<double> c(f.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = -f.values[j];
  return c;
}

void BM_Positions(benchmark::State& state) {
  const auto inst = synthetic(static_cast<int>(state.range(0)), 6, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ngc::compute_positions(inst));
}
BENCHMARK(BM_Positions)->Arg(10)->Arg(30)->Arg(70);

void BM_Formulate(benchmark::State& state) {
  const auto inst = synthetic(static_cast<int>(state.range(0)), 6, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ngc::formulate(inst));
}
BENCHMARK(BM_Formulate)->Arg(10)->Arg(30)->Arg(70);

void BM_LpRelaxation(benchmark::State& state) {
  const auto f = ngc::formulate(synthetic(static_cast<int>(state.range(0)), 6, 3));
  const auto cost = negated_values(f);
  state.counters["columns"] = static_cast<double>(f.size());
  for (auto _ : state) benchmark::DoNotOptimize(ngc::solve_lp(f.full, cost));
}
BENCHMARK(BM_LpRelaxation)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SolveDca(benchmark::State& state) {
  const auto f = ngc::formulate(synthetic(static_cast<int>(state.range(0)), 6, 4));
  ngc::DcaConfig config;
  config.warm_start = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(ngc::solve_dca(f, config));
}
BENCHMARK(BM_SolveDca)
    ->ArgsProduct({{10, 20, 30}, {0, 1}})
    ->ArgNames({"side", "warm"})
    ->Unit(benchmark::kMillisecond);

void BM_BranchAndBound(benchmark::State& state) {
  const auto f = ngc::formulate(synthetic(static_cast<int>(state.range(0)), 3, 5));
  for (auto _ : state) benchmark::DoNotOptimize(ngc::solve_exact_bb(f));
}
BENCHMARK(BM_BranchAndBound)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
