// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CLI_ARGS_HPP
#define PARROM_CLI_ARGS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "parrom/io/report_io.hpp"
#include "parrom/norms/parallel.hpp"
#include "parrom/optimize/problem.hpp"

namespace parrom
{

enum class Command
{
  Help,
  Norm,
  Reduce,
  Check,
  Bench
};

// Which condition families `check` evaluates.
enum class CheckForm
{
  Auto,
  General,
  Dyn,
  Io
};

struct RunConfig
{
  Command command = Command::Help;
  std::string help;  // filled for Command::Help

  std::string fom_path, rom_path, init_path;
  std::string benchmark;
  int rom_order = 0;
  std::vector<double> lo, hi;  // empty when --domain is absent
  std::vector<double> at;      // --at: a single parameter point for `norm`
  OptimizerConfig opt;
  std::optional<std::uint64_t> seed;
  bool free_dyn = true, free_b = false, free_c = true;
  CheckForm form = CheckForm::Auto;
  std::vector<double> samples = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 5.0};
  double tol = 1e-6;
  double cross_tol = 1e-8;
  std::string output = "-";
  std::string rom_out;
  std::string log_path;
  bool log_fd = false;
  ReportFormat format = ReportFormat::Table;
  Execution execution = Execution::Parallel;
};

//
// Deterministic parse of argv (without the program name). Unknown flags, missing required
// arguments and malformed values raise UsageError. "--help" yields Command::Help with the
// help text of the requested (sub)command.
//
RunConfig parse_args(const std::vector<std::string> &args);

// "a:b" per axis, comma-separated for boxes: "0:1,0:1".
void parse_domain(const std::string &text, std::vector<double> &lo, std::vector<double> &hi);

// Applies the keys grad_tol, max_iter, fd_step, armijo_c, shrink and quad_order of a JSON
// object; other keys raise UsageError.
void apply_optimizer_json(const Json &j, OptimizerConfig &cfg);

}  // namespace parrom

#endif  // PARROM_CLI_ARGS_HPP
