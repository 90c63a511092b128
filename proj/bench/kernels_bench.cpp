#include <benchmark/benchmark.h>

#include <vector>

#include "cmv/cayley.hpp"
#include "cmv/dissection.hpp"
#include "cmv/lattice.hpp"
#include "cmv/random.hpp"
#include "cmv/valuation.hpp"

using namespace cmv;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::reference : Execution::parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "reference" : "openmp"); }

Polytope dilated_polytope(long n) {
  Rng rng(7);
  return dilate(random_lattice_polytope(rng, 3, 4, 8), n);
}

std::vector<Polytope> batch(std::size_t count) {
  Rng rng(11);
  std::vector<Polytope> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_lattice_polytope(rng, 3, 3, 6));
  return out;
}

void BM_CountLatticePoints(benchmark::State& state) {
  const auto p = dilated_polytope(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_lattice_points(p, mode(state)));
  label(state);
}
BENCHMARK(BM_CountLatticePoints)->ArgsProduct({{0, 1}, {2, 6}})->Unit(benchmark::kMillisecond);

void BM_CountRelintPoints(benchmark::State& state) {
  const auto p = dilated_polytope(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_relint_points(p, mode(state)));
  label(state);
}
BENCHMARK(BM_CountRelintPoints)->ArgsProduct({{0, 1}, {6}})->Unit(benchmark::kMillisecond);

void BM_EvaluateAll(benchmark::State& state) {
  const auto ps = batch(static_cast<std::size_t>(state.range(1)));
  const auto phi = discrete_volume();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_all(phi, ps, mode(state)));
  label(state);
}
BENCHMARK(BM_EvaluateAll)->ArgsProduct({{0, 1}, {64}})->Unit(benchmark::kMillisecond);

void BM_CmTable(benchmark::State& state) {
  Rng rng(3);
  std::vector<Polytope> ps;
  for (int i = 0; i < 3; ++i) ps.push_back(random_lattice_polytope(rng, 3, 3, 6));
  const auto phi = discrete_volume();
  for (auto _ : state) benchmark::DoNotOptimize(cm_table(phi, ps, 3, mode(state)));
  label(state);
}
BENCHMARK(BM_CmTable)->ArgsProduct({{0, 1}})->Unit(benchmark::kMillisecond);

void BM_BoxcellCertificate(benchmark::State& state) {
  const auto d = boxcell_dissection(3, state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_certificate(d, mode(state)));
  label(state);
}
BENCHMARK(BM_BoxcellCertificate)->ArgsProduct({{0, 1}, {6}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
