// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/conditions/dyn_form.hpp"

#include <map>
#include <sstream>
#include "parrom/conditions/kernel.hpp"

namespace parrom
{

namespace
{

bool ConstantTerms(const auto &terms)
{
  for (const auto &t : terms)
  {
    if (!t.f.is_constant())
    {
      return false;
    }
  }
  return true;
}

using ReportKey = std::pair<ConditionId, int>;

std::map<int, std::map<ReportKey, const ConditionReport *>> ByMode(
    const std::vector<ConditionReport> &reports)
{
  std::map<int, std::map<ReportKey, const ConditionReport *>> out;
  for (const auto &r : reports)
  {
    out[r.mode][{r.id, r.index}] = &r;
  }
  return out;
}

const ConditionReport &Find(const std::map<ReportKey, const ConditionReport *> &reports,
                            ConditionId id, int index, int mode)
{
  const auto it = reports.find({id, index});
  if (it == reports.end())
  {
    std::ostringstream msg;
    msg << "cross check: mode " << mode << " has no " << condition_name(id) << " report";
    if (index >= 0)
    {
      msg << " with index " << index;
    }
    throw StructureError(msg.str());
  }
  return *it->second;
}

}  // namespace

void require_dyn_form(const PoleResidueModel &model, const char *what)
{
  if (model.np() != 1)
  {
    throw StructureError(std::string(what) + ": dyn form needs exactly one parameter");
  }
  for (const auto &mode : model.modes())
  {
    const bool constant =
        mode.is_rank_one()
            ? ConstantTerms(mode.rank_one().b_terms) && ConstantTerms(mode.rank_one().c_terms)
            : ConstantTerms(std::get<FullResidue>(mode.residue).terms);
    if (!constant)
    {
      throw StructureError(std::string(what) + ": dyn form needs parameter-independent residues");
    }
  }
}

GValue eval_G(const PoleResidueModel &model, Complex s_a, Complex s_b, double a, double b)
{
  require_dyn_form(model, "eval_G");
  const ParamPoint qa = {a}, qb = {b};
  GValue out{CMatrix::Zero(model.no(), model.ni()), CMatrix::Zero(model.no(), model.ni()),
             CMatrix::Zero(model.no(), model.ni())};
  for (const auto &mode : model.modes())
  {
    const LogKernelPoint pt{s_a, s_b, mode.pole(qa), mode.pole(qb), a, b};
    const CMatrix residue = mode.residue_at(qa, model.ni(), model.no());
    const KernelPartials d = f_kernel_partials(pt);
    out.g += f_kernel(pt) * residue;
    out.dg_ds_a += d.ds_a * residue;
    out.dg_ds_b += d.ds_b * residue;
  }
  return out;
}

std::vector<ConditionReport> check_thm5(const PoleResidueModel &fom,
                                        const PoleResidueModel &rom, double a, double b,
                                        const std::vector<int> &modes, Execution ex)
{
  require_dyn_form(fom, "check_thm5 (fom)");
  require_dyn_form(rom, "check_thm5 (rom)");
  if (!rom.all_rank_one())
  {
    throw StructureError("check_thm5: rom residues must be rank one");
  }
  if (fom.ni() != rom.ni() || fom.no() != rom.no())
  {
    throw StructureError("check_thm5: fom and rom dimensions differ");
  }
  if (!(a < b))
  {
    throw UsageError("check_thm5: need a < b");
  }
  const ParameterDomain dom({a}, {b}, 1);
  require_stable(fom, dom, "check_thm5 (fom)");
  require_stable(rom, dom, "check_thm5 (rom)");

  std::vector<int> listed = modes;
  if (listed.empty())
  {
    for (int l = 0; l < rom.order(); l++)
    {
      listed.push_back(l);
    }
  }
  const ParamPoint qa = {a}, qb = {b};
  std::vector<std::vector<ConditionReport>> per_mode(listed.size());
  node_sweep(listed.size(), ex,
             [&](std::size_t m)
             {
               const int l = listed[m];
               if (l < 0 || l >= rom.order())
               {
                 throw UsageError("mode index " + std::to_string(l) + " out of range");
               }
               const PoleResidueMode &mode = rom.mode(l);
               auto &out = per_mode[m];
               if (has_zero_residue(mode))
               {
                 out.push_back(degenerate_report(ConditionId::Thm5_1, l, -1, rom.no(), 1));
                 out.push_back(degenerate_report(ConditionId::Thm5_2, l, -1, 1, rom.ni()));
                 out.push_back(degenerate_report(ConditionId::Thm5_3, l, -1, 1, 1));
                 out.push_back(degenerate_report(ConditionId::Thm5_4, l, -1, 1, 1));
                 return;
               }
               const Complex s_a = -std::conj(mode.pole(qa)), s_b = -std::conj(mode.pole(qb));
               const CVector bl = mode.b(qa), cl = mode.c(qa);
               const GValue g = eval_G(fom, s_a, s_b, a, b);
               const GValue gr = eval_G(rom, s_a, s_b, a, b);
               auto scalar = [](Complex z) { return CMatrix::Constant(1, 1, z); };
               out.push_back(make_report(ConditionId::Thm5_1, l, -1, g.g * bl, gr.g * bl));
               out.push_back(make_report(ConditionId::Thm5_2, l, -1, cl.adjoint() * g.g,
                                         cl.adjoint() * gr.g));
               out.push_back(make_report(ConditionId::Thm5_3, l, -1,
                                         scalar(cl.dot(g.dg_ds_a * bl)),
                                         scalar(cl.dot(gr.dg_ds_a * bl))));
               out.push_back(make_report(ConditionId::Thm5_4, l, -1,
                                         scalar(cl.dot(g.dg_ds_b * bl)),
                                         scalar(cl.dot(gr.dg_ds_b * bl))));
             });
  std::vector<ConditionReport> reports;
  for (auto &block : per_mode)
  {
    for (auto &r : block)
    {
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

ConditionBasis dyn_form_basis()
{
  return {{ScalarParamFunction::constant(1), ScalarParamFunction::coordinate(1, 0)},
          {ScalarParamFunction::constant(1)},
          {ScalarParamFunction::constant(1)}};
}

CrossCheck cross_check_thm3_thm5(const std::vector<ConditionReport> &thm3,
                                 const std::vector<ConditionReport> &thm5, double a, double b)
{
  const auto q = ByMode(thm3);
  const auto g = ByMode(thm5);
  CrossCheck out;
  for (const auto &[mode, g_reports] : g)
  {
    const auto it = q.find(mode);
    if (it == q.end())
    {
      throw StructureError("cross check: mode " + std::to_string(mode) +
                           " missing from the quadrature reports");
    }
    const auto &q_reports = it->second;
    const ConditionReport &g1 = Find(g_reports, ConditionId::Thm5_1, -1, mode);
    const ConditionReport &g2 = Find(g_reports, ConditionId::Thm5_2, -1, mode);
    const ConditionReport &g3 = Find(g_reports, ConditionId::Thm5_3, -1, mode);
    const ConditionReport &g4 = Find(g_reports, ConditionId::Thm5_4, -1, mode);
    const ConditionReport &qa = Find(q_reports, ConditionId::Thm3A, 0, mode);
    const ConditionReport &qb = Find(q_reports, ConditionId::Thm3B, 0, mode);
    const ConditionReport &qc0 = Find(q_reports, ConditionId::Thm3C, 0, mode);
    const ConditionReport &qc1 = Find(q_reports, ConditionId::Thm3C, 1, mode);
    auto add = [&](const char *what, const ConditionReport &quad, const CMatrix &lhs,
                   const CMatrix &rhs)
    {
      out.entries.push_back({what, mode, relative_difference(quad.lhs, lhs),
                             relative_difference(quad.rhs, rhs)});
    };
    add("thm3_a[1] vs thm5_1", qa, g1.lhs, g1.rhs);
    add("thm3_b[1] vs thm5_2", qb, g2.lhs, g2.rhs);
    add("thm3_c[1] vs thm5_3 + thm5_4", qc0, g3.lhs + g4.lhs, g3.rhs + g4.rhs);
    add("thm3_c[q] vs a thm5_3 + b thm5_4", qc1, a * g3.lhs + b * g4.lhs,
        a * g3.rhs + b * g4.rhs);
  }
  return out;
}

}  // namespace parrom
