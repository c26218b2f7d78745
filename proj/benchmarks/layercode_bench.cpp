#include <benchmark/benchmark.h>

#include <random>

#include "layercode/analysis.hpp"

using namespace lc;

namespace {

const char* kCodes[] = {"rep3", "c422", "shor", "steane"};

gf2::BitMatrix random_matrix(std::size_t rows, std::size_t cols, uint64_t seed) {
  std::mt19937_64 rng(seed);
  gf2::BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng() % 4 == 0) m.set(r, c);
  return m;
}

void BM_Rank(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  auto m = random_matrix(n, 2 * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gf2::rank(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Build(benchmark::State& state) {
  const auto code = css::builtin(kCodes[state.range(0)]);
  std::size_t n = 0;
  for (auto _ : state) {
    auto lc = layer::build_layer_code(code, 2);
    n = lc.n();
    benchmark::DoNotOptimize(lc.hx);
  }
  state.SetLabel(std::string(kCodes[state.range(0)]) + " N=" + std::to_string(n));
}
BENCHMARK(BM_Build)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_BuildRepetition(benchmark::State& state) {
  const auto code = css::builtin("rep" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(layer::build_layer_code(code, 2).n());
}
BENCHMARK(BM_BuildRepetition)->DenseRange(2, 12, 2)->Unit(benchmark::kMillisecond);

void BM_StructureCheck(benchmark::State& state) {
  const auto lc = layer::build_layer_code(css::builtin(kCodes[state.range(0)]), 2);
  for (auto _ : state) benchmark::DoNotOptimize(layer::check_structure(lc).ok());
  state.SetLabel(kCodes[state.range(0)]);
}
BENCHMARK(BM_StructureCheck)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_RoundTrip(benchmark::State& state) {
  const auto lc = layer::build_layer_code(css::builtin("steane"), 2);
  const auto basis = css::logical_basis(lc.input);
  for (auto _ : state) {
    auto op = logical::quasiconcatenated_logical(lc, basis.x[0], css::PauliType::X);
    benchmark::DoNotOptimize(logical::map_layer_logical_to_input(lc, op));
  }
}
BENCHMARK(BM_RoundTrip)->Unit(benchmark::kMillisecond);

void BM_BarrierExact(benchmark::State& state) {
  const auto code = css::builtin("rep" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analysis::energy_barrier_exact(code, css::PauliType::X).value);
}
BENCHMARK(BM_BarrierExact)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_BarrierSweep(benchmark::State& state) {
  const auto lc = layer::build_layer_code(css::builtin(kCodes[state.range(0)]), 2);
  const auto basis = css::logical_basis(lc.input);
  for (auto _ : state)
    benchmark::DoNotOptimize(analysis::energy_barrier_sweep(lc, basis.x[0], css::PauliType::X).value);
  state.SetLabel(kCodes[state.range(0)]);
}
BENCHMARK(BM_BarrierSweep)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_DistanceBounds(benchmark::State& state) {
  const auto lc = layer::build_layer_code(css::builtin("rep" + std::to_string(state.range(0))), 2);
  analysis::DistanceOptions o;
  o.node_budget = uint64_t{1} << 20;
  for (auto _ : state) benchmark::DoNotOptimize(analysis::layer_distance_bounds(lc, o).upper());
}
BENCHMARK(BM_DistanceBounds)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Correctability(benchmark::State& state) {
  const auto lc = layer::build_layer_code(css::builtin("c422"), 2);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::point_defect_correctability(lc, lc.c).all_pass());
}
BENCHMARK(BM_Correctability)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
