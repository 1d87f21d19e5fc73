// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CLI_COMMANDS_HPP
#define PARROM_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>
#include "parrom/cli/args.hpp"
#include "parrom/cli/benchmarks.hpp"
#include "parrom/conditions/report.hpp"
#include "parrom/io/report_io.hpp"
#include "parrom/optimize/bfgs.hpp"

namespace parrom
{

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;       // not converged, or a condition above tolerance
constexpr int kExitUsage = 2;         // bad arguments or unusable input files
constexpr int kExitInconsistent = 3;  // independent evaluation routes disagree

struct BenchOutcome
{
  PoleResidueModel fom;
  OptimizationResult result;
  std::vector<ConditionReport> thm5, thm3;
  CrossCheck cross;
  ReportDocument doc;
  int exit_code = kExitOk;
};

//
// Reduces the benchmark FOM from truncation init, checks the modified-function and the
// quadrature conditions on one mode per conjugate pair, and cross-validates the two. Exit
// code 3 if the cross check exceeds cfg.cross_tol, else 1 if BFGS did not converge or a
// condition exceeds cfg.tol, else 0.
//
BenchOutcome run_bench(const BenchmarkSpec &spec, const RunConfig &cfg);

// Runs a parsed command, writes its report, and returns the exit code. Errors propagate.
int run_command(const RunConfig &cfg, std::ostream &err);

// parse_args + run_command with every error mapped to its exit code and a message on err.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace parrom

#endif  // PARROM_CLI_COMMANDS_HPP
