// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

// Serial against OpenMP sweeps of the quadrature error and its gradient.

#include <benchmark/benchmark.h>
#include "parrom/cli/benchmarks.hpp"
#include "parrom/norms/h2.hpp"
#include "parrom/optimize/problem.hpp"

using namespace parrom;

namespace
{

struct Fixture
{
  BenchmarkSpec spec;
  PoleResidueModel fom, rom;
  DecisionLayout layout;
};

const Fixture &Get(int which)
{
  static const Fixture fixtures[2] = {
      [] {
        Fixture f{make_benchmark("synth6"), {}, {}, {}};
        f.fom = state_space_to_pole_residue(f.spec.fom, f.spec.domain);
        f.rom = truncation_init(f.spec);
        f.layout = benchmark_layout(f.spec, f.rom);
        return f;
      }(),
      [] {
        Fixture f{make_benchmark("penzl12"), {}, {}, {}};
        f.fom = state_space_to_pole_residue(f.spec.fom, f.spec.domain);
        f.rom = truncation_init(f.spec);
        f.layout = benchmark_layout(f.spec, f.rom);
        return f;
      }()};
  return fixtures[which];
}

Execution Mode(const benchmark::State &state)
{
  return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Error(benchmark::State &state)
{
  const Fixture &f = Get(static_cast<int>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(h2l2_error(f.fom, f.rom, f.spec.domain, Mode(state)).total_sq);
  }
}

void BM_Gradient(benchmark::State &state)
{
  const Fixture &f = Get(static_cast<int>(state.range(0)));
  const ErrorObjective obj(f.fom, f.layout, f.rom, f.spec.domain, Mode(state));
  const RVector x = obj.pack(f.rom);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(obj.gradient(x));
  }
}

}  // namespace

// Arguments: benchmark (0 synth6, 1 penzl12), execution (0 serial, 1 OpenMP).
BENCHMARK(BM_Error)->ArgsProduct({{0, 1}, {0, 1}});
BENCHMARK(BM_Gradient)->ArgsProduct({{0, 1}, {0, 1}});

BENCHMARK_MAIN();
