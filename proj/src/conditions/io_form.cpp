// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/conditions/io_form.hpp"

#include <map>
#include <sstream>

namespace parrom
{

namespace
{

// Block (row, col) of the auxiliary function a monomial maps to: q2 selects the lower
// block row, q1 the right block column.
struct Slot
{
  int row, col;
};

Slot MonomialSlot(const Monomial &m, const char *what)
{
  const int e1 = m.exponents[0], e2 = m.exponents[1];
  if (e1 > 1 || e2 > 1)
  {
    throw StructureError(std::string(what) + ": io form allows only 1, q1, q2 and q1 q2");
  }
  return {e2, e1};
}

struct IoFactors
{
  CVector b1, b2, c1, c2;
};

void RequireIoPoles(const PoleResidueModel &model, const char *what)
{
  if (model.np() != 2)
  {
    throw StructureError(std::string(what) + ": io form needs exactly two parameters");
  }
  for (const auto &mode : model.modes())
  {
    if (!mode.lambda_lin.isZero(0.0))
    {
      throw StructureError(std::string(what) + ": io form needs parameter-independent poles");
    }
  }
}

IoFactors Factors(const PoleResidueModel &model, const PoleResidueMode &mode, const char *what)
{
  IoFactors f{CVector::Zero(model.ni()), CVector::Zero(model.ni()), CVector::Zero(model.no()),
              CVector::Zero(model.no())};
  for (const auto &t : mode.rank_one().b_terms)
  {
    for (const auto &m : t.f.terms())
    {
      const Slot slot = MonomialSlot(m, what);
      if (slot.row != 0)
      {
        throw StructureError(std::string(what) + ": b(q) may depend on q1 only");
      }
      (slot.col == 0 ? f.b1 : f.b2) += m.coeff * t.vector;
    }
  }
  for (const auto &t : mode.rank_one().c_terms)
  {
    for (const auto &m : t.f.terms())
    {
      const Slot slot = MonomialSlot(m, what);
      if (slot.col != 0)
      {
        throw StructureError(std::string(what) + ": c(q) may depend on q2 only");
      }
      (slot.row == 0 ? f.c1 : f.c2) += m.coeff * t.vector;
    }
  }
  return f;
}

CVector Stack(const CVector &top, const CVector &bottom)
{
  CVector out(top.size() + bottom.size());
  out << top, bottom;
  return out;
}

void RequireStablePoles(const ModelAtQ &aux, const char *what)
{
  for (const auto &p : aux.poles)
  {
    if (!(p.real() < 0.0))
    {
      std::ostringstream msg;
      msg << what << ": pole " << p << " is not in the open left half-plane";
      throw Instability(msg.str(), -1, {});
    }
  }
}

std::vector<int> AllModes(const PoleResidueModel &rom, const std::vector<int> &modes)
{
  if (!modes.empty())
  {
    for (const int l : modes)
    {
      if (l < 0 || l >= rom.order())
      {
        throw UsageError("mode index " + std::to_string(l) + " out of range");
      }
    }
    return modes;
  }
  std::vector<int> all;
  for (int l = 0; l < rom.order(); l++)
  {
    all.push_back(l);
  }
  return all;
}

using ReportKey = std::pair<ConditionId, int>;

const ConditionReport &Find(const std::map<ReportKey, const ConditionReport *> &reports,
                            ConditionId id, int index, int mode)
{
  const auto it = reports.find({id, index});
  if (it == reports.end())
  {
    throw StructureError("cross check: mode " + std::to_string(mode) + " has no " +
                         condition_name(id) + " report");
  }
  return *it->second;
}

}  // namespace

ModelAtQ build_aux_tf(const PoleResidueModel &model)
{
  RequireIoPoles(model, "build_aux_tf");
  const int ni = model.ni(), no = model.no();
  ModelAtQ aux;
  aux.ni = 2 * ni;
  aux.no = 2 * no;
  for (const auto &mode : model.modes())
  {
    aux.poles.push_back(mode.lambda0);
    if (mode.is_rank_one())
    {
      const IoFactors f = Factors(model, mode, "build_aux_tf");
      aux.residues.push_back(Stack(f.c1, f.c2) * Stack(f.b1, f.b2).adjoint());
      continue;
    }
    CMatrix r = CMatrix::Zero(2 * no, 2 * ni);
    for (const auto &t : std::get<FullResidue>(mode.residue).terms)
    {
      for (const auto &m : t.f.terms())
      {
        const Slot slot = MonomialSlot(m, "build_aux_tf");
        r.block(slot.row * no, slot.col * ni, no, ni) += m.coeff * t.matrix;
      }
    }
    aux.residues.push_back(std::move(r));
  }
  return aux;
}

CMatrix recombine_aux(const CMatrix &aux, Complex q1, Complex q2, int ni, int no)
{
  const CMatrix right = aux.leftCols(ni) + q1 * aux.rightCols(ni);
  return right.topRows(no) + q2 * right.bottomRows(no);
}

MomentWeights moment_weights(int ni, int no)
{
  auto gram = [](int n)
  {
    RMatrix w(2 * n, 2 * n);
    const RMatrix eye = RMatrix::Identity(n, n);
    w << eye, 0.5 * eye, 0.5 * eye, eye / 3.0;
    return w;
  };
  return {gram(ni), gram(no)};
}

double io_h2l2_error_sq(const ModelAtQ &fom_aux, const ModelAtQ &rom_aux)
{
  if (fom_aux.ni != rom_aux.ni || fom_aux.no != rom_aux.no)
  {
    throw StructureError("io_h2l2_error_sq: auxiliary dimensions differ");
  }
  RequireStablePoles(fom_aux, "io_h2l2_error_sq");
  RequireStablePoles(rom_aux, "io_h2l2_error_sq");
  const MomentWeights w = moment_weights(fom_aux.ni / 2, fom_aux.no / 2);
  const CMatrix wb = w.wb.cast<Complex>(), wc = w.wc.cast<Complex>();
  std::vector<Complex> poles = fom_aux.poles;
  std::vector<CMatrix> terms = fom_aux.residues;
  for (std::size_t j = 0; j < rom_aux.poles.size(); j++)
  {
    poles.push_back(rom_aux.poles[j]);
    terms.push_back(-rom_aux.residues[j]);
  }
  Complex total = 0.0;
  for (std::size_t i = 0; i < poles.size(); i++)
  {
    const CMatrix weighted = wc * terms[i] * wb;
    for (std::size_t j = 0; j < poles.size(); j++)
    {
      total += terms[j].conjugate().cwiseProduct(weighted).sum() /
               (-poles[i] - std::conj(poles[j]));
    }
  }
  if (std::abs(total.imag()) > 1e-10 * (1.0 + std::abs(total.real())))
  {
    std::ostringstream msg;
    msg << "io_h2l2_error_sq: assembled real quantity has imaginary part " << total.imag();
    throw ConsistencyError(msg.str());
  }
  return total.real();
}

IoDirections io_directions(const PoleResidueModel &rom, int mode)
{
  RequireIoPoles(rom, "io_directions");
  if (!rom.mode(mode).is_rank_one())
  {
    throw StructureError("io_directions: rom residues must be rank one");
  }
  const IoFactors f = Factors(rom, rom.mode(mode), "io_directions");
  const MomentWeights w = moment_weights(rom.ni(), rom.no());
  return {w.wb.cast<Complex>() * Stack(f.b1, f.b2), w.wc.cast<Complex>() * Stack(f.c1, f.c2)};
}

std::vector<ConditionReport> check_thm4(const ModelAtQ &fom_aux, const PoleResidueModel &rom,
                                        const std::vector<int> &modes)
{
  if (!rom.all_rank_one())
  {
    throw StructureError("check_thm4: rom residues must be rank one");
  }
  if (fom_aux.ni != 2 * rom.ni() || fom_aux.no != 2 * rom.no())
  {
    throw StructureError("check_thm4: fom and rom dimensions differ");
  }
  const ModelAtQ rom_aux = build_aux_tf(rom);
  RequireStablePoles(fom_aux, "check_thm4 (fom)");
  RequireStablePoles(rom_aux, "check_thm4 (rom)");
  std::vector<ConditionReport> reports;
  for (const int l : AllModes(rom, modes))
  {
    if (has_zero_residue(rom.mode(l)))
    {
      reports.push_back(degenerate_report(ConditionId::Thm4_1, l, -1, fom_aux.no, 1));
      reports.push_back(degenerate_report(ConditionId::Thm4_2, l, -1, 1, fom_aux.ni));
      reports.push_back(degenerate_report(ConditionId::Thm4_3, l, -1, 1, 1));
      continue;
    }
    const IoDirections d = io_directions(rom, l);
    const Complex s = -std::conj(rom.mode(l).lambda0);
    const CMatrix h = eval_transfer(fom_aux, s), hr = eval_transfer(rom_aux, s);
    const CMatrix dh = eval_transfer_ds(fom_aux, s), dhr = eval_transfer_ds(rom_aux, s);
    reports.push_back(make_report(ConditionId::Thm4_1, l, -1, h * d.bb, hr * d.bb));
    reports.push_back(
        make_report(ConditionId::Thm4_2, l, -1, d.cc.adjoint() * h, d.cc.adjoint() * hr));
    reports.push_back(make_report(ConditionId::Thm4_3, l, -1,
                                  CMatrix::Constant(1, 1, d.cc.dot(dh * d.bb)),
                                  CMatrix::Constant(1, 1, d.cc.dot(dhr * d.bb))));
  }
  return reports;
}

std::vector<ConditionReport> check_thm4(const PoleResidueModel &fom,
                                        const PoleResidueModel &rom,
                                        const std::vector<int> &modes)
{
  return check_thm4(build_aux_tf(fom), rom, modes);
}

ConditionBasis io_form_basis()
{
  return {{ScalarParamFunction::constant(2)},
          {ScalarParamFunction::constant(2), ScalarParamFunction::coordinate(2, 0)},
          {ScalarParamFunction::constant(2), ScalarParamFunction::coordinate(2, 1)}};
}

CrossCheck cross_check_thm3_thm4(const std::vector<ConditionReport> &thm3,
                                 const std::vector<ConditionReport> &thm4, int ni, int no)
{
  std::map<int, std::map<ReportKey, const ConditionReport *>> q, h;
  for (const auto &r : thm3)
  {
    q[r.mode][{r.id, r.index}] = &r;
  }
  for (const auto &r : thm4)
  {
    h[r.mode][{r.id, r.index}] = &r;
  }
  const MomentWeights w = moment_weights(ni, no);
  const CMatrix wb = w.wb.cast<Complex>(), wc = w.wc.cast<Complex>();
  CrossCheck out;
  for (const auto &[mode, h_reports] : h)
  {
    const auto it = q.find(mode);
    if (it == q.end())
    {
      throw StructureError("cross check: mode " + std::to_string(mode) +
                           " missing from the quadrature reports");
    }
    const auto &q_reports = it->second;
    const ConditionReport &h1 = Find(h_reports, ConditionId::Thm4_1, -1, mode);
    const ConditionReport &h2 = Find(h_reports, ConditionId::Thm4_2, -1, mode);
    const ConditionReport &h3 = Find(h_reports, ConditionId::Thm4_3, -1, mode);
    const ConditionReport &a0 = Find(q_reports, ConditionId::Thm3A, 0, mode);
    const ConditionReport &a1 = Find(q_reports, ConditionId::Thm3A, 1, mode);
    const ConditionReport &b0 = Find(q_reports, ConditionId::Thm3B, 0, mode);
    const ConditionReport &b1 = Find(q_reports, ConditionId::Thm3B, 1, mode);
    const ConditionReport &c0 = Find(q_reports, ConditionId::Thm3C, 0, mode);

    CMatrix a_lhs(2 * no, 1), a_rhs(2 * no, 1), b_lhs(1, 2 * ni), b_rhs(1, 2 * ni);
    a_lhs << a0.lhs, a1.lhs;
    a_rhs << a0.rhs, a1.rhs;
    b_lhs << b0.lhs, b1.lhs;
    b_rhs << b0.rhs, b1.rhs;
    out.entries.push_back({"thm3_a[1, q2] vs Wc thm4_1", mode,
                           relative_difference(a_lhs, wc * h1.lhs),
                           relative_difference(a_rhs, wc * h1.rhs)});
    out.entries.push_back({"thm3_b[1, q1] vs thm4_2 Wb", mode,
                           relative_difference(b_lhs, h2.lhs * wb),
                           relative_difference(b_rhs, h2.rhs * wb)});
    out.entries.push_back({"thm3_c[1] vs thm4_3", mode, relative_difference(c0.lhs, h3.lhs),
                           relative_difference(c0.rhs, h3.rhs)});
  }
  return out;
}

std::vector<ConditionReport> check_corollary_lines(const ModelAtQ &fom_aux,
                                                   const PoleResidueModel &rom,
                                                   const std::vector<double> &samples,
                                                   const std::vector<int> &modes)
{
  if (rom.ni() != 1 || rom.no() != 1 || fom_aux.ni != 2 || fom_aux.no != 2)
  {
    throw StructureError("check_corollary_lines: needs a single-input single-output pair");
  }
  if (!rom.all_rank_one())
  {
    throw StructureError("check_corollary_lines: rom residues must be rank one");
  }
  const ModelAtQ rom_aux = build_aux_tf(rom);
  RequireStablePoles(fom_aux, "check_corollary_lines (fom)");
  RequireStablePoles(rom_aux, "check_corollary_lines (rom)");
  const int n_samples = static_cast<int>(samples.size());
  auto scalar = [](Complex z) { return CMatrix::Constant(1, 1, z); };
  // [1, q2] M [1; q1] and its partial derivatives in q1 and q2.
  auto value = [](const CMatrix &m, Complex q1, Complex q2)
  { return m(0, 0) + q1 * m(0, 1) + q2 * (m(1, 0) + q1 * m(1, 1)); };
  auto d_q1 = [](const CMatrix &m, Complex q2) { return m(0, 1) + q2 * m(1, 1); };
  auto d_q2 = [](const CMatrix &m, Complex q1) { return m(1, 0) + q1 * m(1, 1); };

  std::vector<ConditionReport> reports;
  for (const int l : AllModes(rom, modes))
  {
    const IoDirections d = io_directions(rom, l);
    if (d.bb(0) == Complex(0.0) || d.cc(0) == Complex(0.0))
    {
      for (const ConditionId id : {ConditionId::Cor1, ConditionId::Cor2, ConditionId::Cor3,
                                   ConditionId::Cor4, ConditionId::Cor5})
      {
        ConditionReport r = make_report(id, l, -1, CMatrix::Zero(1, 1), CMatrix::Zero(1, 1));
        r.skipped = true;
        r.note = d.bb(0) == Complex(0.0) ? "hypothesis failure: first moment of b is zero"
                                         : "hypothesis failure: first moment of c is zero";
        reports.push_back(std::move(r));
      }
      continue;
    }
    const Complex q1s = d.bb(1) / d.bb(0);
    const Complex q2s = std::conj(d.cc(1)) / std::conj(d.cc(0));
    const Complex s = -std::conj(rom.mode(l).lambda0);
    const CMatrix h = eval_transfer(fom_aux, s), hr = eval_transfer(rom_aux, s);
    const CMatrix dh = eval_transfer_ds(fom_aux, s), dhr = eval_transfer_ds(rom_aux, s);
    auto add = [&](ConditionId id, int idx, std::optional<double> t, Complex lhs, Complex rhs)
    {
      ConditionReport r = make_report(id, l, idx, scalar(lhs), scalar(rhs));
      r.sample = t;
      reports.push_back(std::move(r));
    };
    for (int k = 0; k < n_samples; k++)
    {
      const double t = samples[k];
      add(ConditionId::Cor1, k, t, value(h, q1s, t), value(hr, q1s, t));
      add(ConditionId::Cor2, k, t, d_q2(h, q1s), d_q2(hr, q1s));
      add(ConditionId::Cor3, k, t, value(h, t, q2s), value(hr, t, q2s));
      add(ConditionId::Cor4, k, t, d_q1(h, q2s), d_q1(hr, q2s));
    }
    add(ConditionId::Cor5, -1, std::nullopt, value(dh, q1s, q2s), value(dhr, q1s, q2s));
  }
  return reports;
}

}  // namespace parrom
