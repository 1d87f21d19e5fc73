// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include "parrom/conditions/dyn_form.hpp"
#include "parrom/conditions/general.hpp"
#include "parrom/conditions/io_form.hpp"
#include "parrom/io/json_io.hpp"
#include "parrom/norms/h2.hpp"
#include "parrom/optimize/layout.hpp"

namespace parrom
{

namespace
{

const std::vector<std::string> kDynLegend = {
    "thm5_1: right Lagrange, G b = Gr b at s_a = -conj(lambda(a)), s_b = -conj(lambda(b))",
    "thm5_2: left Lagrange, c^* G = c^* Gr",
    "thm5_3: Hermite in s_a, c^* dG/ds_a b = c^* dGr/ds_a b",
    "thm5_4: Hermite in s_b, c^* dG/ds_b b = c^* dGr/ds_b b",
    "thm3_a, thm3_b, thm3_c: the same conditions as parameter integrals by Gauss-Legendre "
    "quadrature; index 0 is the weight 1, index 1 the weight q",
    "one mode per conjugate pair is listed; the partner's values are complex conjugates",
    "single input and output: thm5_1 and thm5_2 differ by scalar factors only, so their "
    "rel_err agree and form one Lagrange residual per mode",
    "rel_err divides by the norm of the full-order side"};

const std::vector<std::string> kIoLegend = {
    "thm4_1: Haux bb = Hraux bb at -conj(lambda), bb = Wb [b1; b2]",
    "thm4_2: cc^* Haux = cc^* Hraux, cc = Wc [c1; c2]",
    "thm4_3: cc^* Haux' bb = cc^* Hraux' bb",
    "cor_1 .. cor_5: line conditions H(s, q1*, t), d/dq2, H(s, t, q2*), d/dq1 and dH/ds at "
    "q1* = bb_2 / bb_1, q2* = conj(cc_2) / conj(cc_1)",
    "thm3_a, thm3_b, thm3_c: the integral conditions with weights {1, q2}, {1, q1}, {1}"};

Json ModesJson(const PoleResidueModel &rom)
{
  Json modes = Json::array();
  for (const auto &m : rom.modes())
  {
    modes.push_back({{"lambda0", complex_to_json(m.lambda0)},
                     {"lambda_lin", matrix_to_json(m.lambda_lin)}});
  }
  return modes;
}

void WriteLog(const std::string &path, const std::vector<IterationRecord> &log,
              const std::vector<double> &fd_diff)
{
  std::ostringstream out;
  out << "iter,objective,grad_norm,step" << (fd_diff.empty() ? "" : ",fd_rel_diff") << '\n';
  char line[160];
  for (std::size_t k = 0; k < log.size(); k++)
  {
    const auto &r = log[k];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g", r.iter, r.objective, r.grad_norm,
                  r.step);
    out << line;
    if (!fd_diff.empty())
    {
      std::snprintf(line, sizeof line, ",%.17g", fd_diff[k]);
      out << line;
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

// Runs BFGS, optionally recording the analytic vs finite-difference gradient discrepancy at
// every accepted iterate.
OptimizationResult Optimize(const ErrorObjective &obj, const RVector &x0, const RunConfig &cfg)
{
  std::vector<double> fd_diff;
  IterationCallback callback;
  if (cfg.log_fd)
  {
    callback = [&](const IterationRecord &, const RVector &x)
    {
      const RVector g = obj.gradient(x), fd = grad_fd(obj, x, cfg.opt.fd_step);
      const double scale = std::max(g.lpNorm<Eigen::Infinity>(), fd.lpNorm<Eigen::Infinity>());
      fd_diff.push_back((g - fd).lpNorm<Eigen::Infinity>() / std::max(scale, 1e-300));
    };
  }
  OptimizationResult result = bfgs_minimize(obj, x0, cfg.opt, callback);
  if (!cfg.log_path.empty())
  {
    WriteLog(cfg.log_path, result.log, fd_diff);
  }
  return result;
}

bool IsDynForm(const PoleResidueModel &fom, const PoleResidueModel &rom)
{
  try
  {
    require_dyn_form(fom, "check");
    require_dyn_form(rom, "check");
    return true;
  }
  catch (const StructureError &)
  {
    return false;
  }
}

bool IsIoForm(const PoleResidueModel &fom, const PoleResidueModel &rom,
              const ParameterDomain &dom)
{
  if (dom.np() != 2 || dom.lo != std::vector<double>{0.0, 0.0} ||
      dom.hi != std::vector<double>{1.0, 1.0})
  {
    return false;
  }
  try
  {
    build_aux_tf(fom);
    build_aux_tf(rom);
    return true;
  }
  catch (const StructureError &)
  {
    return false;
  }
}

void Append(std::vector<ConditionReport> &to, std::vector<ConditionReport> from)
{
  for (auto &r : from)
  {
    to.push_back(std::move(r));
  }
}

bool AnyUncertified(const std::vector<ConditionReport> &reports)
{
  for (const auto &r : reports)
  {
    if (!r.certified)
    {
      return true;
    }
  }
  return false;
}

ParameterDomain DomainFrom(const RunConfig &cfg)
{
  if (cfg.lo.empty())
  {
    throw UsageError("--domain is required");
  }
  return ParameterDomain(cfg.lo, cfg.hi, cfg.opt.quad_order);
}

PoleResidueModel LoadModel(const std::string &path)
{
  return model_from_json(read_json_file(path));
}

int RunNorm(const RunConfig &cfg)
{
  const PoleResidueModel fom = LoadModel(cfg.fom_path);
  const ParameterDomain dom = DomainFrom(cfg);
  const PoleResidueModel zero(fom.np(), fom.ni(), fom.no(), {});
  ReportDocument doc;
  doc.command = "norm";
  const double norm_sq = h2l2_error(fom, zero, dom, cfg.execution).total_sq;
  doc.summary["h2l2_norm"] = std::sqrt(norm_sq);
  if (!cfg.rom_path.empty())
  {
    const PoleResidueModel rom = LoadModel(cfg.rom_path);
    const double err_sq = h2l2_error(fom, rom, dom, cfg.execution).total_sq;
    doc.summary["h2l2_error"] = std::sqrt(err_sq);
    doc.summary["h2l2_rel_error"] = std::sqrt(err_sq / norm_sq);
  }
  if (!cfg.at.empty())
  {
    if (static_cast<int>(cfg.at.size()) != fom.np())
    {
      throw UsageError("--at needs one value per parameter");
    }
    const ModelAtQ m = freeze(fom, cfg.at);
    doc.summary["h2_norm_at"] = std::sqrt(h2_inner_pr(m, m).real());
    doc.summary["h2_norm_at_frequency_oracle"] = h2_norm_freq_oracle(m, 1e-9);
  }
  emit_report(doc, cfg.format, cfg.output);
  return kExitOk;
}

int RunReduce(const RunConfig &cfg, std::ostream &err)
{
  const ParameterDomain dom = DomainFrom(cfg);
  const Json fom_json = read_json_file(cfg.fom_path);
  PoleResidueModel fom, init;
  if (is_pole_residue_json(fom_json))
  {
    fom = pole_residue_from_json(fom_json);
    if (cfg.init_path.empty())
    {
      throw UsageError("reduce: truncation init needs a state-space FOM; pass --init");
    }
  }
  else
  {
    const ParametricStateSpace ss = state_space_from_json(fom_json);
    fom = state_space_to_pole_residue(ss, dom);
    if (cfg.init_path.empty())
    {
      if (cfg.rom_order > ss.n())
      {
        throw UsageError("reduce: --order exceeds the FOM order");
      }
      init = state_space_to_pole_residue(ss.truncate(cfg.rom_order), dom);
    }
  }
  if (!cfg.init_path.empty())
  {
    init = LoadModel(cfg.init_path);
  }
  const DecisionLayout layout = make_layout(init, cfg.free_dyn, cfg.free_b, cfg.free_c);
  const ErrorObjective obj(fom, layout, init, dom, cfg.execution);
  RVector x0 = obj.pack(init);
  if (cfg.seed)
  {
    x0 = random_start(obj, x0, *cfg.seed);
  }
  const OptimizationResult result = Optimize(obj, x0, cfg);

  // Only conditions that come from stationarity in free data are expected to hold.
  ConditionBasis basis = basis_from_model(result.rom);
  if (!cfg.free_dyn)
  {
    basis.alpha.clear();
  }
  if (!cfg.free_b)
  {
    basis.beta.clear();
  }
  if (!cfg.free_c)
  {
    basis.gamma.clear();
  }
  ReportDocument doc;
  doc.command = "reduce";
  doc.conditions = check_thm3(fom, result.rom, dom, basis, pair_representatives(result.rom),
                              cfg.execution);
  doc.legend = {"thm3_a, thm3_b, thm3_c: integral conditions for the free C, B and A data; "
                "index is the basis function"};
  if (AnyUncertified(doc.conditions))
  {
    doc.warnings.push_back("quadrature order below " + std::to_string(kMinCertifiedOrder) +
                           ": conditions are not certified");
    err << "warning: " << doc.warnings.back() << '\n';
  }
  doc.summary["converged"] = result.converged;
  doc.summary["iterations"] = result.iterations;
  doc.summary["h2l2_error_sq"] = result.objective_history.back();
  doc.summary["modes"] = ModesJson(result.rom);
  doc.result = result;
  if (!cfg.rom_out.empty())
  {
    write_text_file(cfg.rom_out, to_json(result.rom).dump(2) + "\n");
  }
  emit_report(doc, cfg.format, cfg.output);
  if (!result.converged)
  {
    err << "reduce: " << result.message << '\n';
    return kExitFailure;
  }
  return all_within(doc.conditions, cfg.tol) ? kExitOk : kExitFailure;
}

int RunCheck(const RunConfig &cfg, std::ostream &err)
{
  const PoleResidueModel fom = LoadModel(cfg.fom_path);
  const PoleResidueModel rom = LoadModel(cfg.rom_path);
  const ParameterDomain dom = DomainFrom(cfg);
  CheckForm form = cfg.form;
  if (form == CheckForm::Auto)
  {
    form = IsDynForm(fom, rom)        ? CheckForm::Dyn
           : IsIoForm(fom, rom, dom) ? CheckForm::Io
                                     : CheckForm::General;
  }
  if (form == CheckForm::Io && !IsIoForm(fom, rom, dom))
  {
    throw UsageError("check --form io needs io-form models on the domain 0:1,0:1");
  }
  const std::vector<int> reps = pair_representatives(rom);
  ReportDocument doc;
  doc.command = "check";
  bool consistent = true;
  if (form == CheckForm::Dyn)
  {
    doc.summary["form"] = "dyn";
    const double a = dom.lo[0], b = dom.hi[0];
    auto thm5 = check_thm5(fom, rom, a, b, reps, cfg.execution);
    auto thm3 = check_thm3(fom, rom, dom, dyn_form_basis(), reps, cfg.execution);
    const CrossCheck cross = cross_check_thm3_thm5(thm3, thm5, a, b);
    consistent = cross.passed(cfg.cross_tol);
    doc.cross_checks.push_back({"thm3_vs_thm5", cross});
    Append(doc.conditions, std::move(thm5));
    Append(doc.conditions, std::move(thm3));
    doc.legend = kDynLegend;
  }
  else if (form == CheckForm::Io)
  {
    doc.summary["form"] = "io";
    const ModelAtQ fom_aux = build_aux_tf(fom);
    auto thm4 = check_thm4(fom_aux, rom, reps);
    auto thm3 = check_thm3(fom, rom, dom, io_form_basis(), reps, cfg.execution);
    const CrossCheck cross = cross_check_thm3_thm4(thm3, thm4, rom.ni(), rom.no());
    consistent = cross.passed(cfg.cross_tol);
    doc.cross_checks.push_back({"thm3_vs_thm4", cross});
    doc.summary["h2l2_error_sq_closed_form"] = io_h2l2_error_sq(fom_aux, build_aux_tf(rom));
    Append(doc.conditions, std::move(thm4));
    Append(doc.conditions, std::move(thm3));
    if (rom.ni() == 1 && rom.no() == 1)
    {
      Append(doc.conditions, check_corollary_lines(fom_aux, rom, cfg.samples, reps));
    }
    doc.legend = kIoLegend;
  }
  else
  {
    doc.summary["form"] = "general";
    doc.conditions = check_thm3(fom, rom, dom, basis_from_model(rom), reps, cfg.execution);
    doc.legend = {"thm3_a, thm3_b, thm3_c: integral conditions weighted by the C, B and A "
                  "term functions; index is the basis function"};
  }
  if (AnyUncertified(doc.conditions))
  {
    doc.warnings.push_back("quadrature order below " + std::to_string(kMinCertifiedOrder) +
                           ": conditions are not certified");
    err << "warning: " << doc.warnings.back() << '\n';
  }
  doc.summary["max_rel_err"] = max_rel_err(doc.conditions);
  emit_report(doc, cfg.format, cfg.output);
  if (!consistent)
  {
    err << "check: checker cross-validation exceeds " << cfg.cross_tol << '\n';
    return kExitInconsistent;
  }
  return all_within(doc.conditions, cfg.tol) ? kExitOk : kExitFailure;
}

int RunBenchCommand(const RunConfig &cfg, std::ostream &err)
{
  const BenchmarkSpec spec = make_benchmark(cfg.benchmark, cfg.opt.quad_order);
  BenchOutcome out = run_bench(spec, cfg);
  for (const auto &w : out.doc.warnings)
  {
    err << "warning: " << w << '\n';
  }
  if (!cfg.rom_out.empty())
  {
    write_text_file(cfg.rom_out, to_json(out.result.rom).dump(2) + "\n");
  }
  emit_report(out.doc, cfg.format, cfg.output);
  if (out.exit_code == kExitInconsistent)
  {
    err << "bench: checker cross-validation " << format_sci(out.cross.max_rel_diff())
        << " exceeds " << cfg.cross_tol << '\n';
  }
  else if (!out.result.converged)
  {
    err << "bench: " << out.result.message << '\n';
  }
  return out.exit_code;
}

}  // namespace

BenchOutcome run_bench(const BenchmarkSpec &spec, const RunConfig &cfg)
{
  BenchOutcome out;
  const PoleResidueModel init = truncation_init(spec);
  out.fom = state_space_to_pole_residue(spec.fom, spec.domain);
  const ErrorObjective obj(out.fom, benchmark_layout(spec, init), init, spec.domain,
                           cfg.execution);
  out.result = Optimize(obj, obj.pack(init), cfg);

  const double a = spec.domain.lo[0], b = spec.domain.hi[0];
  const std::vector<int> reps = pair_representatives(out.result.rom);
  out.thm5 = check_thm5(out.fom, out.result.rom, a, b, reps, cfg.execution);
  out.thm3 =
      check_thm3(out.fom, out.result.rom, spec.domain, dyn_form_basis(), reps, cfg.execution);
  out.cross = cross_check_thm3_thm5(out.thm3, out.thm5, a, b);

  std::vector<ConditionReport> all = out.thm5;
  Append(all, out.thm3);
  if (!out.cross.passed(cfg.cross_tol))
  {
    out.exit_code = kExitInconsistent;
  }
  else if (!out.result.converged || !all_within(all, cfg.tol))
  {
    out.exit_code = kExitFailure;
  }

  ReportDocument &doc = out.doc;
  doc.command = "bench";
  doc.conditions = std::move(all);
  doc.cross_checks.push_back({"thm3_vs_thm5", out.cross});
  doc.legend = kDynLegend;
  if (AnyUncertified(doc.conditions))
  {
    doc.warnings.push_back("quadrature order below " + std::to_string(kMinCertifiedOrder) +
                           ": conditions are not certified");
  }
  const PoleResidueModel zero(out.fom.np(), out.fom.ni(), out.fom.no(), {});
  const double norm_sq = h2l2_error(out.fom, zero, spec.domain, cfg.execution).total_sq;
  const double err_sq = out.result.objective_history.back();
  doc.summary = {{"benchmark", spec.name},
                 {"converged", out.result.converged},
                 {"iterations", out.result.iterations},
                 {"grad_inf_norm", out.result.grad_inf_norm},
                 {"h2l2_error_sq", err_sq},
                 {"h2l2_rel_error", std::sqrt(err_sq / norm_sq)},
                 {"max_rel_err", max_rel_err(doc.conditions)},
                 {"max_cross_rel_diff", out.cross.max_rel_diff()},
                 {"tol", cfg.tol},
                 {"cross_tol", cfg.cross_tol},
                 {"quad_order", spec.domain.quad_order[0]},
                 {"modes", ModesJson(out.result.rom)},
                 {"exit_code", out.exit_code}};
  doc.result = out.result;
  return out;
}

int run_command(const RunConfig &cfg, std::ostream &err)
{
  switch (cfg.command)
  {
    case Command::Norm:
      return RunNorm(cfg);
    case Command::Reduce:
      return RunReduce(cfg, err);
    case Command::Check:
      return RunCheck(cfg, err);
    case Command::Bench:
      return RunBenchCommand(cfg, err);
    case Command::Help:
      break;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
  try
  {
    const RunConfig cfg = parse_args(args);
    if (cfg.command == Command::Help)
    {
      out << cfg.help;
      return kExitOk;
    }
    return run_command(cfg, err);
  }
  catch (const UsageError &e)
  {
    err << "parrom: usage error: " << e.what() << "\n(run 'parrom --help')\n";
    return kExitUsage;
  }
  catch (const IoError &e)
  {
    err << "parrom: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (const StructureError &e)
  {
    err << "parrom: invalid model: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (const Instability &e)
  {
    err << "parrom: unstable model: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (const ConsistencyError &e)
  {
    err << "parrom: internal inconsistency: " << e.what() << '\n';
    return kExitInconsistent;
  }
  catch (const std::exception &e)
  {
    err << "parrom: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace parrom
