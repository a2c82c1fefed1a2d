// Microbenchmarks for the hot paths: circuit enumeration, exact
// determinants, the two saturation routes, census sweeps, Graver
// completion, and the margin-walk step.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/graver.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/sampler.hpp"
#include "satfrac/saturation.hpp"

namespace {

using namespace satfrac;

struct FourFactorFixture {
  FactorialDesign design{{2, 2, 2, 2}};
  IntMatrix a = design_matrix(design, model_with_interactions(design, 2));
  CircuitBasis basis = enumerate_circuits(a);
  CircuitSupportIndex index{basis, 11};
  Fraction saturated{design, {0, 1, 3, 4, 6, 9, 10, 12, 13, 14, 15}};
  Fraction blocked{design, {0, 1, 3, 5, 6, 9, 10, 12, 13, 14, 15}};
};

const FourFactorFixture& four_factor() {
  static const FourFactorFixture f;
  return f;
}

void BM_EnumerateCircuits_2p4_order2(benchmark::State& state) {
  const IntMatrix& a = four_factor().a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_circuits(a).circuits.size());
  }
}
BENCHMARK(BM_EnumerateCircuits_2p4_order2);

void BM_EnumerateCircuits_2x3x4_order2(benchmark::State& state) {
  const FactorialDesign d({2, 3, 4});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_circuits(a).circuits.size());
  }
}
BENCHMARK(BM_EnumerateCircuits_2x3x4_order2);

void BM_Determinant_11x11(benchmark::State& state) {
  const FourFactorFixture& f = four_factor();
  std::vector<int> cols(f.saturated.points().begin(), f.saturated.points().end());
  const IntMatrix sub = f.a.select_columns(cols);
  for (auto _ : state) {
    benchmark::DoNotOptimize(determinant(sub));
  }
}
BENCHMARK(BM_Determinant_11x11);

void BM_SaturationByDeterminant(benchmark::State& state) {
  const FourFactorFixture& f = four_factor();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_saturated_by_determinant(f.saturated, f.a).saturated);
  }
}
BENCHMARK(BM_SaturationByDeterminant);

void BM_SaturationByCircuitIndex(benchmark::State& state) {
  const FourFactorFixture& f = four_factor();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_saturated_by_circuits(f.saturated, f.index).saturated);
  }
}
BENCHMARK(BM_SaturationByCircuitIndex);

void BM_SaturationByCircuitIndex_Blocked(benchmark::State& state) {
  const FourFactorFixture& f = four_factor();
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_saturated_by_circuits(f.blocked, f.index).saturated);
  }
}
BENCHMARK(BM_SaturationByCircuitIndex_Blocked);

void BM_CountSaturated_2p4(benchmark::State& state) {
  const IntMatrix& a = four_factor().a;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_saturated(a).saturated);
  }
}
BENCHMARK(BM_CountSaturated_2p4);

void BM_GraverCompletion_2x3x4(benchmark::State& state) {
  const FactorialDesign d({2, 3, 4});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis circuits = enumerate_circuits(a);
  GraverOptions opts;
  opts.circuit_seed = &circuits.circuits;
  for (auto _ : state) {
    benchmark::DoNotOptimize(graver_basis(a, opts).elements.size());
  }
}
BENCHMARK(BM_GraverCompletion_2x3x4);

void BM_ChainStep(benchmark::State& state) {
  const FourFactorFixture& f = four_factor();
  const IntMatrix m = margin_matrix(f.design);
  const MoveSet moves = universal_moves(m);
  std::vector<int> table = fraction_to_table(f.saturated);
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(table, moves, rng));
  }
}
BENCHMARK(BM_ChainStep);

}  // namespace

BENCHMARK_MAIN();
