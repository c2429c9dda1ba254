#include <benchmark/benchmark.h>

#include "gca/builders.hpp"
#include "gca/kernels/kernels.hpp"

namespace k = gca::kernels;

namespace {

// Index 0: all-scalar chain of state.range(0); index 1: mixed diamond squared.
gca::GradedSpec bench_spec(int which, int n) {
  if (which == 0) return gca::build_all_scalar(gca::Semilattice::chain(n));
  return gca::tensor_spec(gca::mixed_diamond(), gca::mixed_diamond());
}

template <class F>
void run_spec_kernel(benchmark::State& state, F kernel) {
  const auto spec = bench_spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(spec));
  state.counters["dim"] = spec.total_dim();
}

void BM_AxiomB_Serial(benchmark::State& s) { run_spec_kernel(s, [](const auto& sp) { return k::serial::axiom_b(sp); }); }
void BM_AxiomB_Parallel(benchmark::State& s) { run_spec_kernel(s, [](const auto& sp) { return k::parallel::axiom_b(sp); }); }
void BM_ProductTable_Serial(benchmark::State& s) {
  run_spec_kernel(s, [](const auto& sp) { return k::serial::product_table(sp); });
}
void BM_ProductTable_Parallel(benchmark::State& s) {
  run_spec_kernel(s, [](const auto& sp) { return k::parallel::product_table(sp); });
}

void BM_QAssoc_Serial(benchmark::State& s) {
  run_spec_kernel(s, [q = std::optional<gca::QFamily>()](const auto& sp) mutable {
    if (!q) q = gca::q_from_phi(sp);
    return k::serial::q_associativity(*q);
  });
}
void BM_QAssoc_Parallel(benchmark::State& s) {
  run_spec_kernel(s, [q = std::optional<gca::QFamily>()](const auto& sp) mutable {
    if (!q) q = gca::q_from_phi(sp);
    return k::parallel::q_associativity(*q);
  });
}

std::vector<gca::AlgElement> random_elements(int count) {
  gca::Rng rng(gca::kDefaultSeed);
  const gca::AlgebraShape shape({4, 4, 4});
  std::vector<gca::AlgElement> out;
  for (int i = 0; i < count; ++i) out.push_back(gca::AlgElement::random(shape, rng));
  return out;
}

void BM_PairProducts_Serial(benchmark::State& state) {
  const auto elems = random_elements(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k::serial::pair_products(elems));
}
void BM_PairProducts_Parallel(benchmark::State& state) {
  const auto elems = random_elements(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k::parallel::pair_products(elems));
}

void spec_args(benchmark::internal::Benchmark* b) {
  b->Args({0, 8})->Args({0, 16})->Args({1, 0})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_AxiomB_Serial)->Apply(spec_args);
BENCHMARK(BM_AxiomB_Parallel)->Apply(spec_args);
BENCHMARK(BM_ProductTable_Serial)->Apply(spec_args);
BENCHMARK(BM_ProductTable_Parallel)->Apply(spec_args);
BENCHMARK(BM_QAssoc_Serial)->Args({0, 8})->Args({1, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QAssoc_Parallel)->Args({0, 8})->Args({1, 0})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairProducts_Serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairProducts_Parallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
