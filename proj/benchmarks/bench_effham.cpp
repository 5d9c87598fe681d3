#include "effham/bloch_brandow.hpp"
#include "effham/least_action.hpp"
#include "effham/models.hpp"
#include "effham/philox.hpp"
#include "effham/schrieffer_wolff.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace effham;

ComplexMatrix random_hermitian(Index dim, std::uint64_t seed) {
  Philox rng(seed);
  ComplexMatrix h(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    h(i, i) = rng.next_gaussian();
    for (Index j = i + 1; j < dim; ++j) {
      const Complex z(rng.next_gaussian(), rng.next_gaussian());
      h(i, j) = z / std::sqrt(2.0);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

BlockPartition half_partition(Index dim) {
  std::vector<Index> p;
  for (Index i = 0; i < dim / 2; ++i) p.push_back(i);
  return BlockPartition::bipartition(std::move(p), dim);
}

void BM_HermitianEig(benchmark::State& state) {
  const Index dim = state.range(0);
  const ComplexMatrix h = random_hermitian(dim, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eig(h));
  }
}
BENCHMARK(BM_HermitianEig)->Arg(16)->Arg(64)->Arg(243);

void BM_LeastAction(benchmark::State& state) {
  const Index dim = state.range(0);
  const ComplexMatrix h = random_hermitian(dim, 11);
  const BlockPartition partition = half_partition(dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(least_action_transform(h, partition));
  }
}
BENCHMARK(BM_LeastAction)->Arg(16)->Arg(64)->Arg(243);

void BM_BbOrder4(benchmark::State& state) {
  const Index dim = state.range(0);
  ComplexMatrix h = random_hermitian(dim, 13);
  // Spread the diagonal so resolvent denominators stay well away from zero.
  for (Index i = 0; i < dim; ++i) h(i, i) = static_cast<double>(i);
  h = (0.1 * h).eval();
  for (Index i = 0; i < dim; ++i) h(i, i) = static_cast<double>(i);
  const BlockPartition partition = half_partition(dim);
  const PerturbationSplit split = PerturbationSplit::from_hamiltonian(h, partition);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bb_effective(split, 4, true));
  }
}
BENCHMARK(BM_BbOrder4)->Arg(16)->Arg(27)->Arg(64);

void BM_GivensBlockDiag(benchmark::State& state) {
  const Index dim = state.range(0);
  ComplexMatrix h = random_hermitian(dim, 17);
  for (Index i = 0; i < dim; ++i) h(i, i) = static_cast<double>(i);
  const BlockPartition partition = half_partition(dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(givens_block_diagonalize(h, partition));
  }
}
BENCHMARK(BM_GivensBlockDiag)->Arg(8)->Arg(16)->Arg(27);

void BM_BuildThreeBodyModel(benchmark::State& state) {
  CircuitModel model;
  model.modes = {{3.459, 0.21, 3, "q1"}, {4.5, -0.3, 3, "c1"}, {4.0, 0.3, 3, "q2"},
                 {4.5, -0.3, 3, "c2"},   {3.459, 0.21, 3, "q3"}};
  model.couplings = {{0, 1, 0.075, CouplingForm::kFullDipole},
                     {1, 2, 0.075, CouplingForm::kFullDipole},
                     {2, 3, 0.075, CouplingForm::kFullDipole},
                     {3, 4, 0.075, CouplingForm::kFullDipole},
                     {0, 2, 0.005, CouplingForm::kFullDipole},
                     {2, 4, 0.005, CouplingForm::kFullDipole}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hamiltonian(model));
  }
}
BENCHMARK(BM_BuildThreeBodyModel);

}  // namespace

BENCHMARK_MAIN();
