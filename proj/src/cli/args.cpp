// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/cli/args.hpp"

#include <algorithm>
#include <sstream>
#include <CLI11.hpp>

namespace parrom
{

namespace
{

double ParseNumber(const std::string &text, const std::string &what)
{
  try
  {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size())
    {
      return v;
    }
  }
  catch (const std::exception &)
  {
  }
  throw UsageError("malformed number '" + text + "' in " + what);
}

std::vector<std::string> Split(const std::string &text, char sep)
{
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep))
  {
    parts.push_back(part);
  }
  return parts;
}

std::vector<double> ParseList(const std::string &text, const std::string &what)
{
  std::vector<double> out;
  for (const auto &p : Split(text, ','))
  {
    out.push_back(ParseNumber(p, what));
  }
  if (out.empty())
  {
    throw UsageError(what + " must not be empty");
  }
  return out;
}

struct RawOptions
{
  std::string domain, at, free = "dyn,c", form = "auto", samples, format = "table";
  std::string config;
  std::optional<double> grad_tol;
  std::optional<int> max_iter, quad_order;
  bool serial = false;
};

void AddOutputOptions(CLI::App *cmd, RunConfig &cfg, RawOptions &raw)
{
  cmd->add_option("--format", raw.format, "Report format: json, csv or table")
      ->capture_default_str();
  cmd->add_option("-o,--output", cfg.output, "Report path ('-' for stdout)")
      ->capture_default_str();
  cmd->add_flag("--serial", raw.serial, "Evaluate quadrature nodes serially");
  cmd->add_option("--quad-order", raw.quad_order,
                  "Gauss-Legendre nodes per parameter axis (default 64)");
}

void AddOptimizerOptions(CLI::App *cmd, RunConfig &cfg, RawOptions &raw)
{
  cmd->add_option("--config", raw.config, "JSON file with optimizer settings");
  cmd->add_option("--grad-tol", raw.grad_tol, "Gradient infinity-norm tolerance");
  cmd->add_option("--max-iter", raw.max_iter, "Iteration limit");
  cmd->add_option("--log", cfg.log_path, "Write the iteration log as CSV");
  cmd->add_flag("--log-fd", cfg.log_fd,
                "Add the finite-difference gradient discrepancy to the log");
  cmd->add_option("--rom-out", cfg.rom_out, "Write the reduced model as JSON");
  cmd->add_option("--tol", cfg.tol, "Condition tolerance on rel_err")->capture_default_str();
}

void Configure(CLI::App &app, RunConfig &cfg, RawOptions &raw)
{
  app.require_subcommand(1);

  auto *norm = app.add_subcommand("norm", "H2 (x) L2 norm of a model, or error of a ROM");
  norm->add_option("--fom", cfg.fom_path, "Full-order model JSON")->required();
  norm->add_option("--rom", cfg.rom_path, "Reduced model JSON (reports the error)");
  norm->add_option("--domain", raw.domain, "Parameter box, e.g. 1:100 or 0:1,0:1")
      ->required();
  norm->add_option("--at", raw.at, "Also evaluate the H2 norm at one parameter point");
  AddOutputOptions(norm, cfg, raw);

  auto *reduce = app.add_subcommand("reduce", "Optimize a diagonal ROM by BFGS");
  reduce->add_option("--fom", cfg.fom_path, "Full-order model JSON")->required();
  reduce->add_option("-r,--order", cfg.rom_order, "ROM order (truncation init)");
  reduce->add_option("--init", cfg.init_path, "Initial ROM JSON instead of truncation");
  reduce->add_option("--seed", cfg.seed, "Seeded random perturbation of the initial ROM");
  reduce->add_option("--domain", raw.domain, "Parameter box")->required();
  reduce->add_option("--free", raw.free, "Optimized data: comma list of dyn, b, c")
      ->capture_default_str();
  AddOptimizerOptions(reduce, cfg, raw);
  AddOutputOptions(reduce, cfg, raw);

  auto *check = app.add_subcommand("check", "Evaluate interpolatory optimality conditions");
  check->add_option("--fom", cfg.fom_path, "Full-order model JSON")->required();
  check->add_option("--rom", cfg.rom_path, "Reduced model JSON")->required();
  check->add_option("--domain", raw.domain, "Parameter box")->required();
  check->add_option("--form", raw.form, "Condition family: auto, general, dyn or io")
      ->capture_default_str();
  check->add_option("--samples", raw.samples, "q samples for the line conditions");
  check->add_option("--tol", cfg.tol, "Tolerance on rel_err")->capture_default_str();
  check->add_option("--cross-tol", cfg.cross_tol, "Tolerance of checker cross-validation")
      ->capture_default_str();
  AddOutputOptions(check, cfg, raw);

  auto *bench = app.add_subcommand("bench", "Run a built-in benchmark: synth6 or penzl12");
  bench->add_option("name", cfg.benchmark, "Benchmark name")->required();
  bench->add_option("--cross-tol", cfg.cross_tol, "Tolerance of checker cross-validation")
      ->capture_default_str();
  AddOptimizerOptions(bench, cfg, raw);
  AddOutputOptions(bench, cfg, raw);
}

}  // namespace

void parse_domain(const std::string &text, std::vector<double> &lo, std::vector<double> &hi)
{
  lo.clear();
  hi.clear();
  for (const auto &axis : Split(text, ','))
  {
    const auto ends = Split(axis, ':');
    if (ends.size() != 2)
    {
      throw UsageError("domain axis '" + axis + "' is not of the form a:b");
    }
    lo.push_back(ParseNumber(ends[0], "--domain"));
    hi.push_back(ParseNumber(ends[1], "--domain"));
    if (!(lo.back() < hi.back()))
    {
      throw UsageError("domain axis '" + axis + "' needs a < b");
    }
  }
  if (lo.empty())
  {
    throw UsageError("--domain must not be empty");
  }
}

void apply_optimizer_json(const Json &j, OptimizerConfig &cfg)
{
  if (!j.is_object())
  {
    throw UsageError("optimizer config must be a JSON object");
  }
  for (const auto &[key, value] : j.items())
  {
    if (!value.is_number())
    {
      throw UsageError("optimizer config key '" + key + "' must be a number");
    }
    if (key == "grad_tol")
    {
      cfg.grad_tol = value.get<double>();
    }
    else if (key == "max_iter")
    {
      cfg.max_iter = value.get<int>();
    }
    else if (key == "fd_step")
    {
      cfg.fd_step = value.get<double>();
    }
    else if (key == "armijo_c")
    {
      cfg.armijo_c = value.get<double>();
    }
    else if (key == "shrink")
    {
      cfg.shrink = value.get<double>();
    }
    else if (key == "quad_order")
    {
      cfg.quad_order = value.get<int>();
    }
    else if (key != "schema")
    {
      throw UsageError("unknown optimizer config key '" + key + "'");
    }
  }
}

RunConfig parse_args(const std::vector<std::string> &args)
{
  RunConfig cfg;
  RawOptions raw;
  CLI::App app("Parametric H2 (x) L2 reduced-order modeling: norms, reduction and "
               "optimality checks",
               "parrom");
  Configure(app, cfg, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &)
  {
    cfg.command = Command::Help;
    cfg.help = app.help();
    return cfg;
  }
  catch (const CLI::CallForAllHelp &)
  {
    cfg.command = Command::Help;
    cfg.help = app.help("", CLI::AppFormatMode::All);
    return cfg;
  }
  catch (const CLI::ParseError &e)
  {
    throw UsageError(e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  cfg.command = name == "norm"     ? Command::Norm
                : name == "reduce" ? Command::Reduce
                : name == "check"  ? Command::Check
                                   : Command::Bench;
  cfg.format = parse_format(raw.format);
  cfg.execution = raw.serial ? Execution::Serial : Execution::Parallel;
  if (!raw.domain.empty())
  {
    parse_domain(raw.domain, cfg.lo, cfg.hi);
  }
  if (!raw.at.empty())
  {
    cfg.at = ParseList(raw.at, "--at");
  }
  if (!raw.samples.empty())
  {
    cfg.samples = ParseList(raw.samples, "--samples");
  }
  if (!raw.config.empty())
  {
    apply_optimizer_json(read_json_file(raw.config), cfg.opt);
  }
  if (raw.grad_tol)
  {
    cfg.opt.grad_tol = *raw.grad_tol;
  }
  if (raw.max_iter)
  {
    cfg.opt.max_iter = *raw.max_iter;
  }
  if (raw.quad_order)
  {
    cfg.opt.quad_order = *raw.quad_order;
  }
  cfg.opt.validate();

  cfg.free_dyn = cfg.free_b = cfg.free_c = false;
  for (const auto &part : Split(raw.free, ','))
  {
    if (part == "dyn")
    {
      cfg.free_dyn = true;
    }
    else if (part == "b")
    {
      cfg.free_b = true;
    }
    else if (part == "c")
    {
      cfg.free_c = true;
    }
    else
    {
      throw UsageError("--free accepts dyn, b and c, got '" + part + "'");
    }
  }

  if (raw.form == "auto")
  {
    cfg.form = CheckForm::Auto;
  }
  else if (raw.form == "general")
  {
    cfg.form = CheckForm::General;
  }
  else if (raw.form == "dyn")
  {
    cfg.form = CheckForm::Dyn;
  }
  else if (raw.form == "io")
  {
    cfg.form = CheckForm::Io;
  }
  else
  {
    throw UsageError("--form must be auto, general, dyn or io");
  }

  if (cfg.command == Command::Reduce)
  {
    if (cfg.init_path.empty() && cfg.rom_order < 1)
    {
      throw UsageError("reduce needs --order >= 1 or --init");
    }
  }
  if (!(cfg.tol > 0.0) || !(cfg.cross_tol > 0.0))
  {
    throw UsageError("tolerances must be positive");
  }
  return cfg;
}

}  // namespace parrom
