// Serial reference vs OpenMP windowed kernels on the estimator grids.

#include <vector>

#include <benchmark/benchmark.h>

#include "lbentropy/entropy.hpp"
#include "lbentropy/grid.hpp"
#include "lbentropy/sampler.hpp"

namespace {

using namespace lbentropy;

LBSample make_sample(std::size_t n) {
  static const LBSampler sampler(QuantileModel(Gld{2, 1, 3, 5}));
  RandomStream rng(42);
  return sampler.sample(n, rng);
}

template <auto Kernel>
void run(benchmark::State& state, bool probability_grid_nodes) {
  const auto s = make_sample(static_cast<std::size_t>(state.range(0)));
  const double h = rot_bandwidth(s, {});
  std::vector<double> nodes = probability_grid(0.01, 501);
  if (!probability_grid_nodes)
    for (auto& x : nodes) x = s.front() + x * (s.back() - s.front());
  std::vector<double> out(nodes.size());
  for (auto _ : state) {
    Kernel(s, h, KernelSpec{}, nodes, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(nodes.size()));
}

void BM_jones_serial(benchmark::State& st) { run<&serial::jones_density>(st, false); }
void BM_jones_parallel(benchmark::State& st) { run<&grid::jones_density>(st, false); }
void BM_q2n_serial(benchmark::State& st) { run<&serial::q2n>(st, true); }
void BM_q2n_parallel(benchmark::State& st) { run<&grid::q2n>(st, true); }
void BM_xi1_nodes_serial(benchmark::State& st) { run<&serial::jones_at_sen_quantile>(st, true); }
void BM_xi1_nodes_parallel(benchmark::State& st) { run<&grid::jones_at_sen_quantile>(st, true); }

}  // namespace

BENCHMARK(BM_jones_serial)->RangeMultiplier(4)->Range(64, 16384);
BENCHMARK(BM_jones_parallel)->RangeMultiplier(4)->Range(64, 16384);
BENCHMARK(BM_q2n_serial)->RangeMultiplier(4)->Range(64, 16384);
BENCHMARK(BM_q2n_parallel)->RangeMultiplier(4)->Range(64, 16384);
BENCHMARK(BM_xi1_nodes_serial)->RangeMultiplier(4)->Range(64, 16384);
BENCHMARK(BM_xi1_nodes_parallel)->RangeMultiplier(4)->Range(64, 16384);

BENCHMARK_MAIN();
