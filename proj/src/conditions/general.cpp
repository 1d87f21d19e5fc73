// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/conditions/general.hpp"

#include <algorithm>
#include <sstream>
#include "parrom/norms/quadrature.hpp"

namespace parrom
{

namespace
{

// Values at one quadrature node for one mode.
struct NodeValues
{
  CMatrix hb, hb_rom;      // no x 1
  CMatrix ch, ch_rom;      // 1 x ni
  Complex chb, chb_rom;    // c^* H'(s) b
};

void AppendUnique(std::vector<ScalarParamFunction> &out, const ScalarParamFunction &f)
{
  if (std::find(out.begin(), out.end(), f) == out.end())
  {
    out.push_back(f);
  }
}

std::vector<int> ResolveModes(const PoleResidueModel &rom, const std::vector<int> &modes)
{
  if (modes.empty())
  {
    std::vector<int> all(rom.order());
    for (int l = 0; l < rom.order(); l++)
    {
      all[l] = l;
    }
    return all;
  }
  for (const int l : modes)
  {
    if (l < 0 || l >= rom.order())
    {
      throw UsageError("mode index " + std::to_string(l) + " out of range");
    }
  }
  return modes;
}

}  // namespace

ConditionBasis basis_from_model(const PoleResidueModel &rom)
{
  const int np = rom.np();
  ConditionBasis basis;
  basis.alpha.push_back(ScalarParamFunction::constant(np));
  for (int k = 0; k < np; k++)
  {
    const bool used = std::any_of(rom.modes().begin(), rom.modes().end(),
                                  [k](const PoleResidueMode &m)
                                  { return m.lambda_lin[k] != Complex(0.0); });
    if (used)
    {
      basis.alpha.push_back(ScalarParamFunction::coordinate(np, k));
    }
  }
  for (const auto &mode : rom.modes())
  {
    if (!mode.is_rank_one())
    {
      continue;
    }
    for (const auto &t : mode.rank_one().b_terms)
    {
      AppendUnique(basis.beta, t.f);
    }
    for (const auto &t : mode.rank_one().c_terms)
    {
      AppendUnique(basis.gamma, t.f);
    }
  }
  return basis;
}

bool has_zero_residue(const PoleResidueMode &mode)
{
  auto zero = [](const auto &terms)
  {
    return std::all_of(terms.begin(), terms.end(),
                       [](const auto &t) { return t.f.terms().empty() || t.vector.isZero(0.0); });
  };
  if (mode.is_rank_one())
  {
    return zero(mode.rank_one().b_terms) || zero(mode.rank_one().c_terms);
  }
  const auto &terms = std::get<FullResidue>(mode.residue).terms;
  return std::all_of(terms.begin(), terms.end(),
                     [](const MatrixTerm &t) { return t.f.terms().empty() || t.matrix.isZero(0.0); });
}

std::vector<int> pair_representatives(const PoleResidueModel &rom)
{
  std::vector<int> reps;
  for (int l = 0; l < rom.order(); l++)
  {
    if (!rom.real_realizable() || rom.conjugate_partner(l) >= l)
    {
      reps.push_back(l);
    }
  }
  return reps;
}

std::vector<ConditionReport> check_thm3(const PoleResidueModel &fom,
                                        const PoleResidueModel &rom,
                                        const ParameterDomain &dom,
                                        const ConditionBasis &basis,
                                        const std::vector<int> &modes, Execution ex)
{
  if (!rom.all_rank_one())
  {
    throw StructureError("check_thm3: rom residues must be rank one");
  }
  if (fom.ni() != rom.ni() || fom.no() != rom.no() || fom.np() != rom.np() ||
      dom.np() != rom.np())
  {
    throw StructureError("check_thm3: fom, rom and domain dimensions differ");
  }
  require_stable(fom, dom, "check_thm3 (fom)");
  require_stable(rom, dom, "check_thm3 (rom)");
  const std::vector<int> listed = ResolveModes(rom, modes);
  const TensorRule rule = tensor_gauss_legendre(dom);
  const int ni = rom.ni(), no = rom.no();

  std::vector<std::vector<NodeValues>> values(rule.size());
  node_sweep(rule.size(), ex,
             [&](std::size_t n)
             {
               const ParamView q = rule.nodes[n];
               auto &slot = values[n];
               slot.resize(listed.size());
               for (std::size_t m = 0; m < listed.size(); m++)
               {
                 const PoleResidueMode &mode = rom.mode(listed[m]);
                 const Complex s = -std::conj(mode.pole(q));
                 const CVector b = mode.b(q), c = mode.c(q);
                 const CMatrix h = eval_transfer(fom, s, q), h_rom = eval_transfer(rom, s, q);
                 const CMatrix dh = eval_transfer_ds(fom, s, q);
                 const CMatrix dh_rom = eval_transfer_ds(rom, s, q);
                 NodeValues &v = slot[m];
                 v.hb = h * b;
                 v.hb_rom = h_rom * b;
                 v.ch = c.adjoint() * h;
                 v.ch_rom = c.adjoint() * h_rom;
                 v.chb = c.dot(dh * b);
                 v.chb_rom = c.dot(dh_rom * b);
               }
             });

  const int min_order = *std::min_element(dom.quad_order.begin(), dom.quad_order.end());
  std::vector<ConditionReport> reports;
  for (std::size_t m = 0; m < listed.size(); m++)
  {
    const int l = listed[m];
    const bool degenerate = has_zero_residue(rom.mode(l));
    auto emit = [&](ConditionId id, int idx, const ScalarParamFunction &f, int rows, int cols,
                    auto lhs_of, auto rhs_of)
    {
      if (degenerate)
      {
        reports.push_back(degenerate_report(id, l, idx, rows, cols));
        return;
      }
      CMatrix lhs = CMatrix::Zero(rows, cols), rhs = CMatrix::Zero(rows, cols);
      for (std::size_t n = 0; n < rule.size(); n++)
      {
        const double w = rule.weights[n] * f(rule.nodes[n]);
        lhs += w * lhs_of(values[n][m]);
        rhs += w * rhs_of(values[n][m]);
      }
      reports.push_back(make_report(id, l, idx, std::move(lhs), std::move(rhs)));
    };
    for (std::size_t k = 0; k < basis.gamma.size(); k++)
    {
      emit(ConditionId::Thm3A, static_cast<int>(k), basis.gamma[k], no, 1,
           [](const NodeValues &v) { return v.hb; }, [](const NodeValues &v) { return v.hb_rom; });
    }
    for (std::size_t j = 0; j < basis.beta.size(); j++)
    {
      emit(ConditionId::Thm3B, static_cast<int>(j), basis.beta[j], 1, ni,
           [](const NodeValues &v) { return v.ch; }, [](const NodeValues &v) { return v.ch_rom; });
    }
    for (std::size_t i = 0; i < basis.alpha.size(); i++)
    {
      emit(ConditionId::Thm3C, static_cast<int>(i), basis.alpha[i], 1, 1,
           [](const NodeValues &v) { return CMatrix::Constant(1, 1, v.chb); },
           [](const NodeValues &v) { return CMatrix::Constant(1, 1, v.chb_rom); });
    }
  }
  if (min_order < kMinCertifiedOrder)
  {
    std::ostringstream note;
    note << "uncertified: quadrature order " << min_order << " < " << kMinCertifiedOrder;
    for (auto &r : reports)
    {
      r.certified = false;
      r.note = r.note.empty() ? note.str() : r.note + "; " + note.str();
    }
  }
  return reports;
}

}  // namespace parrom
