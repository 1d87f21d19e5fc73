// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/cli/benchmarks.hpp"

namespace parrom
{

namespace
{

// Six states, three rotation blocks with A(p) = A1 + p A2,
//   A1 = blockdiag([[0, w], [-w, 0]]) for w = 10, 30, 50,  A2 = -diag(10, 10, 30, 30, 50, 50).
// The last block uses -50 p on the diagonal so that every pole is stable on the domain.
BenchmarkSpec Synth6(int quad_order)
{
  const int n = 6;
  CMatrix A1 = CMatrix::Zero(n, n), A2 = CMatrix::Zero(n, n);
  const double w[3] = {10.0, 30.0, 50.0};
  for (int k = 0; k < 3; k++)
  {
    A1(2 * k, 2 * k + 1) = w[k];
    A1(2 * k + 1, 2 * k) = -w[k];
    A2(2 * k, 2 * k) = -w[k];
    A2(2 * k + 1, 2 * k + 1) = -w[k];
  }
  CMatrix B = CMatrix::Zero(n, 1), C = CMatrix::Zero(1, n);
  for (int k = 0; k < 3; k++)
  {
    B(2 * k, 0) = 2.0;
    C(0, 2 * k) = 1.0;
  }
  const auto one = ScalarParamFunction::constant(1);
  const auto p = ScalarParamFunction::coordinate(1, 0);
  BenchmarkSpec spec;
  spec.name = "synth6";
  spec.fom = ParametricStateSpace(1, {}, {{one, A1}, {p, A2}}, {{one, B}}, {{one, C}});
  spec.domain = ParameterDomain({1.0 / 50.0}, {1.0}, quad_order);
  spec.rom_order = 4;
  return spec;
}

// Twelve states: the block [[-1, p], [-p, -1]] followed by diag(-1, ..., -10), with
// B^T = C = [5 5 1 ... 1].
BenchmarkSpec Penzl12(int quad_order)
{
  const int n = 12;
  CMatrix A1 = CMatrix::Zero(n, n), A2 = CMatrix::Zero(n, n);
  A1(0, 0) = A1(1, 1) = -1.0;
  A2(0, 1) = 1.0;
  A2(1, 0) = -1.0;
  for (int k = 0; k < 10; k++)
  {
    A1(2 + k, 2 + k) = -(k + 1.0);
  }
  CMatrix B = CMatrix::Ones(n, 1);
  B(0, 0) = B(1, 0) = 5.0;
  const CMatrix C = B.transpose();
  const auto one = ScalarParamFunction::constant(1);
  const auto p = ScalarParamFunction::coordinate(1, 0);
  BenchmarkSpec spec;
  spec.name = "penzl12";
  spec.fom = ParametricStateSpace(1, {}, {{one, A1}, {p, A2}}, {{one, B}}, {{one, C}});
  spec.domain = ParameterDomain({1.0}, {100.0}, quad_order);
  spec.rom_order = 3;
  return spec;
}

}  // namespace

std::vector<std::string> benchmark_names() { return {"synth6", "penzl12"}; }

BenchmarkSpec make_benchmark(const std::string &name, int quad_order)
{
  if (name == "synth6")
  {
    return Synth6(quad_order);
  }
  if (name == "penzl12")
  {
    return Penzl12(quad_order);
  }
  throw UsageError("unknown benchmark '" + name + "' (expected synth6 or penzl12)");
}

PoleResidueModel truncation_init(const BenchmarkSpec &spec)
{
  return state_space_to_pole_residue(spec.fom.truncate(spec.rom_order), spec.domain);
}

DecisionLayout benchmark_layout(const BenchmarkSpec &spec, const PoleResidueModel &init)
{
  return make_layout(init, spec.dynamics_free, spec.b_free, spec.c_free);
}

}  // namespace parrom
