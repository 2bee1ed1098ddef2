// Parallel kernels against their serial reference versions.

#include <array>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "symext/block_state.hpp"
#include "symext/generate.hpp"
#include "symext/linalg.hpp"
#include "symext/reference.hpp"
#include "symext/schur_basis.hpp"
#include "symext/solver.hpp"

using namespace symext;

namespace {

ComplexMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

SystemLayout qubit_layout(int k) { return SystemLayout::with_qubits(2, k); }

void BM_PartialTrace(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto lay = qubit_layout(k);
  const ComplexMatrix m = random_hermitian(static_cast<Eigen::Index>(lay.total()), 1);
  const std::array<std::size_t, 2> keep{0, 1};
  for (auto _ : st) benchmark::DoNotOptimize(partial_trace(m, lay, keep));
}

void BM_PartialTraceRef(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto lay = qubit_layout(k);
  const ComplexMatrix m = random_hermitian(static_cast<Eigen::Index>(lay.total()), 1);
  const std::array<std::size_t, 2> keep{0, 1};
  for (auto _ : st) benchmark::DoNotOptimize(ref::partial_trace(m, lay, keep));
}

std::vector<int> cycle(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) p[static_cast<std::size_t>(t)] = (t + 1) % k;
  return p;
}

void BM_PermuteSubsystems(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto lay = qubit_layout(k);
  const ComplexMatrix m = random_hermitian(static_cast<Eigen::Index>(lay.total()), 2);
  const auto p = cycle(k);
  for (auto _ : st) benchmark::DoNotOptimize(permute_subsystems(m, lay, 1, p));
}

void BM_PermuteSubsystemsRef(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto lay = qubit_layout(k);
  const ComplexMatrix m = random_hermitian(static_cast<Eigen::Index>(lay.total()), 2);
  const auto p = cycle(k);
  for (auto _ : st) benchmark::DoNotOptimize(ref::permute_subsystems(m, lay, 1, p));
}

void BM_BlocksToGlobal(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto basis = build_schur_basis(k);
  const auto inst = gen_random_extendible(k, 2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(blocks_to_global(inst.witness, basis));
}

void BM_BlocksToGlobalRef(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto basis = build_schur_basis(k);
  const auto inst = gen_random_extendible(k, 2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(ref::blocks_to_global(inst.witness, basis));
}

void BM_GlobalToBlocks(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto basis = build_schur_basis(k);
  const DensityMatrix rho = blocks_to_global(gen_random_extendible(k, 2, 4).witness, basis);
  for (auto _ : st) benchmark::DoNotOptimize(global_to_blocks(rho, basis));
}

void BM_GlobalToBlocksRef(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto basis = build_schur_basis(k);
  const DensityMatrix rho = blocks_to_global(gen_random_extendible(k, 2, 4).witness, basis);
  for (auto _ : st) benchmark::DoNotOptimize(ref::global_to_blocks(rho, basis));
}

void BM_PsdProject(benchmark::State& st) {
  const ComplexMatrix h = random_hermitian(st.range(0), 5);
  for (auto _ : st) benchmark::DoNotOptimize(psd_project(h));
}

void BM_PsdProjectRef(benchmark::State& st) {
  const ComplexMatrix h = random_hermitian(st.range(0), 5);
  for (auto _ : st) benchmark::DoNotOptimize(ref::psd_project(h));
}

void BM_SolvePlanted(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const auto inst = gen_random_extendible(k, 3, 6);
  for (auto _ : st) benchmark::DoNotOptimize(solve_symmetric(inst.marginal, k));
}

}  // namespace

BENCHMARK(BM_PartialTrace)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PartialTraceRef)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PermuteSubsystems)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PermuteSubsystemsRef)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BlocksToGlobal)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BlocksToGlobalRef)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GlobalToBlocks)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GlobalToBlocksRef)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PsdProject)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PsdProjectRef)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolvePlanted)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
