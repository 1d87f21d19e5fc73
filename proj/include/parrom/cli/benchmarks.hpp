// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CLI_BENCHMARKS_HPP
#define PARROM_CLI_BENCHMARKS_HPP

#include <string>
#include <vector>
#include "parrom/model/pole_residue.hpp"
#include "parrom/model/state_space.hpp"
#include "parrom/optimize/layout.hpp"

namespace parrom
{

// A built-in reduction problem: FOM, domain, ROM order and which ROM data is optimized.
struct BenchmarkSpec
{
  std::string name;
  ParametricStateSpace fom;
  ParameterDomain domain;
  int rom_order = 0;
  bool dynamics_free = true;
  bool b_free = false;
  bool c_free = true;
};

std::vector<std::string> benchmark_names();
// UsageError for an unknown name.
BenchmarkSpec make_benchmark(const std::string &name, int quad_order = 64);

// Truncation of the FOM to its first rom_order states, in pole-residue form, and the
// matching decision layout.
PoleResidueModel truncation_init(const BenchmarkSpec &spec);
DecisionLayout benchmark_layout(const BenchmarkSpec &spec, const PoleResidueModel &init);

}  // namespace parrom

#endif  // PARROM_CLI_BENCHMARKS_HPP
