// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/optimize/layout.hpp"

#include <cmath>
#include <sstream>

namespace parrom
{

int DecisionLayout::n_states() const
{
  int n = 0;
  for (const auto &b : blocks)
  {
    n += b.states();
  }
  return n;
}

int DecisionLayout::n_coords() const
{
  int n = 0;
  for (const auto &b : blocks)
  {
    n += b.coords(np);
  }
  const int ns = n_states();
  return n + static_cast<int>(b_fns.size()) * ns * ni + static_cast<int>(c_fns.size()) * no * ns;
}

std::vector<bool> DecisionLayout::free_mask() const
{
  std::vector<bool> mask;
  mask.reserve(n_coords());
  for (const auto &b : blocks)
  {
    mask.insert(mask.end(), b.free.begin(), b.free.end());
  }
  for (const auto &m : b_free)
  {
    for (int i = 0; i < m.rows(); i++)
    {
      for (int k = 0; k < m.cols(); k++)
      {
        mask.push_back(m(i, k));
      }
    }
  }
  for (const auto &m : c_free)
  {
    for (int k = 0; k < m.rows(); k++)
    {
      for (int j = 0; j < m.cols(); j++)
      {
        mask.push_back(m(k, j));
      }
    }
  }
  return mask;
}

int DecisionLayout::n_free() const
{
  int n = 0;
  for (const bool f : free_mask())
  {
    n += f ? 1 : 0;
  }
  return n;
}

void DecisionLayout::validate() const
{
  if (np < 1 || ni < 1 || no < 1 || blocks.empty())
  {
    throw StructureError("DecisionLayout: need np, ni, no >= 1 and at least one block");
  }
  for (const auto &b : blocks)
  {
    if (static_cast<int>(b.free.size()) != b.coords(np))
    {
      throw StructureError("DecisionLayout: block free flags have the wrong length");
    }
  }
  if (b_fns.empty() || c_fns.empty() || b_free.size() != b_fns.size() ||
      c_free.size() != c_fns.size())
  {
    throw StructureError("DecisionLayout: B and C need terms with one free mask each");
  }
  const int ns = n_states();
  for (const auto &m : b_free)
  {
    if (m.rows() != ns || m.cols() != ni)
    {
      throw StructureError("DecisionLayout: B free mask is not n_states x ni");
    }
  }
  for (const auto &m : c_free)
  {
    if (m.rows() != no || m.cols() != ns)
    {
      throw StructureError("DecisionLayout: C free mask is not no x n_states");
    }
  }
  for (const auto &f : b_fns)
  {
    if (f.np() != np)
    {
      throw StructureError("DecisionLayout: B term function has wrong parameter dimension");
    }
  }
  for (const auto &f : c_fns)
  {
    if (f.np() != np)
    {
      throw StructureError("DecisionLayout: C term function has wrong parameter dimension");
    }
  }
  if (n_free() == 0)
  {
    throw StructureError("DecisionLayout: no free coordinates");
  }
}

namespace
{

bool IsReal(Complex z) { return std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z.real())); }

bool IsRealMode(const PoleResidueMode &m)
{
  if (!IsReal(m.lambda0))
  {
    return false;
  }
  for (Eigen::Index k = 0; k < m.lambda_lin.size(); k++)
  {
    if (!IsReal(m.lambda_lin(k)))
    {
      return false;
    }
  }
  if (!m.is_rank_one())
  {
    return false;
  }
  for (const auto *terms : {&m.rank_one().b_terms, &m.rank_one().c_terms})
  {
    for (const auto &t : *terms)
    {
      for (Eigen::Index k = 0; k < t.vector.size(); k++)
      {
        if (!IsReal(t.vector(k)))
        {
          return false;
        }
      }
    }
  }
  return true;
}

bool Close(Complex a, Complex b)
{
  return std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a) + std::abs(b));
}

bool IsConjugatePair(const PoleResidueMode &p, const PoleResidueMode &m)
{
  if (!p.is_rank_one() || !m.is_rank_one() || !Close(m.lambda0, std::conj(p.lambda0)))
  {
    return false;
  }
  for (Eigen::Index k = 0; k < p.lambda_lin.size(); k++)
  {
    if (!Close(m.lambda_lin(k), std::conj(p.lambda_lin(k))))
    {
      return false;
    }
  }
  auto conj_terms = [](const std::vector<VectorTerm> &a, const std::vector<VectorTerm> &b)
  {
    if (a.size() != b.size())
    {
      return false;
    }
    for (std::size_t t = 0; t < a.size(); t++)
    {
      if (!(a[t].f == b[t].f) || a[t].vector.size() != b[t].vector.size())
      {
        return false;
      }
      for (Eigen::Index k = 0; k < a[t].vector.size(); k++)
      {
        if (!Close(b[t].vector(k), std::conj(a[t].vector(k))))
        {
          return false;
        }
      }
    }
    return true;
  };
  return conj_terms(p.rank_one().b_terms, m.rank_one().b_terms) &&
         conj_terms(p.rank_one().c_terms, m.rank_one().c_terms);
}

void CheckTermFunctions(const std::vector<VectorTerm> &terms,
                        const std::vector<ScalarParamFunction> &fns, int len, int mode,
                        const char *name)
{
  bool ok = terms.size() == fns.size();
  for (std::size_t t = 0; ok && t < terms.size(); t++)
  {
    ok = terms[t].f == fns[t] && terms[t].vector.size() == len;
  }
  if (!ok)
  {
    std::ostringstream msg;
    msg << "layout: " << name << " terms of mode " << mode << " do not match the layout";
    throw StructureError(msg.str());
  }
}

}  // namespace

DecisionLayout make_layout(const PoleResidueModel &rom, bool dynamics_free, bool b_free,
                           bool c_free)
{
  if (!rom.all_rank_one() || rom.order() == 0)
  {
    throw StructureError("make_layout: need a nonempty model with rank-one residues");
  }
  DecisionLayout layout;
  layout.np = rom.np();
  layout.ni = rom.ni();
  layout.no = rom.no();
  for (int l = 0; l < rom.order();)
  {
    const auto &m = rom.mode(l);
    if (IsRealMode(m))
    {
      layout.blocks.push_back({BlockKind::Real1x1, std::vector<bool>(1 + rom.np(), dynamics_free)});
      l += 1;
    }
    else if (l + 1 < rom.order() && IsConjugatePair(m, rom.mode(l + 1)))
    {
      layout.blocks.push_back(
          {BlockKind::Conj2x2, std::vector<bool>(2 * (1 + rom.np()), dynamics_free)});
      l += 2;
    }
    else
    {
      std::ostringstream msg;
      msg << "make_layout: mode " << l << " is neither real nor followed by its conjugate";
      throw StructureError(msg.str());
    }
  }
  for (const auto &t : rom.mode(0).rank_one().b_terms)
  {
    layout.b_fns.push_back(t.f);
  }
  for (const auto &t : rom.mode(0).rank_one().c_terms)
  {
    layout.c_fns.push_back(t.f);
  }
  const int ns = layout.n_states();
  layout.b_free.assign(layout.b_fns.size(), BoolMatrix::Constant(ns, layout.ni, b_free));
  layout.c_free.assign(layout.c_fns.size(), BoolMatrix::Constant(layout.no, ns, c_free));
  layout.validate();
  return layout;
}

RVector layout_coords(const PoleResidueModel &rom, const DecisionLayout &layout)
{
  layout.validate();
  const int np = layout.np, ni = layout.ni, no = layout.no, ns = layout.n_states();
  if (rom.np() != np || rom.ni() != ni || rom.no() != no || rom.order() != ns ||
      !rom.all_rank_one())
  {
    throw StructureError("layout: model dimensions or order do not match the layout");
  }
  RVector x(layout.n_coords());
  int pos = 0;
  std::vector<int> mode_row;  // first state row of each block
  int l = 0;
  for (const auto &blk : layout.blocks)
  {
    const auto &m = rom.mode(l);
    CheckTermFunctions(m.rank_one().b_terms, layout.b_fns, ni, l, "b");
    CheckTermFunctions(m.rank_one().c_terms, layout.c_fns, no, l, "c");
    if (blk.kind == BlockKind::Real1x1)
    {
      if (!IsRealMode(m))
      {
        throw StructureError("layout: a Real1x1 block holds a mode with complex data");
      }
      x(pos++) = m.lambda0.real();
      for (int k = 0; k < np; k++)
      {
        x(pos++) = m.lambda_lin(k).real();
      }
    }
    else
    {
      if (l + 1 >= rom.order() || !IsConjugatePair(m, rom.mode(l + 1)))
      {
        throw StructureError("layout: a Conj2x2 block does not hold a conjugate mode pair");
      }
      x(pos++) = m.lambda0.real();
      for (int k = 0; k < np; k++)
      {
        x(pos++) = m.lambda_lin(k).real();
      }
      x(pos++) = m.lambda0.imag();
      for (int k = 0; k < np; k++)
      {
        x(pos++) = m.lambda_lin(k).imag();
      }
    }
    mode_row.push_back(l);
    l += blk.states();
  }
  for (std::size_t t = 0; t < layout.b_fns.size(); t++)
  {
    RMatrix Bt(ns, ni);
    for (std::size_t bi = 0; bi < layout.blocks.size(); bi++)
    {
      const int r = mode_row[bi];
      const CVector &b = rom.mode(r).rank_one().b_terms[t].vector;
      if (layout.blocks[bi].kind == BlockKind::Real1x1)
      {
        Bt.row(r) = b.real().transpose();
      }
      else
      {
        Bt.row(r) = 2.0 * b.real().transpose();
        Bt.row(r + 1) = 2.0 * b.imag().transpose();
      }
    }
    for (int i = 0; i < ns; i++)
    {
      for (int k = 0; k < ni; k++)
      {
        x(pos++) = Bt(i, k);
      }
    }
  }
  for (std::size_t t = 0; t < layout.c_fns.size(); t++)
  {
    RMatrix Ct(no, ns);
    for (std::size_t bi = 0; bi < layout.blocks.size(); bi++)
    {
      const int r = mode_row[bi];
      const CVector &c = rom.mode(r).rank_one().c_terms[t].vector;
      Ct.col(r) = c.real();
      if (layout.blocks[bi].kind == BlockKind::Conj2x2)
      {
        Ct.col(r + 1) = c.imag();
      }
    }
    for (int k = 0; k < no; k++)
    {
      for (int j = 0; j < ns; j++)
      {
        x(pos++) = Ct(k, j);
      }
    }
  }
  return x;
}

PoleResidueModel model_from_coords(const RVector &coords, const DecisionLayout &layout)
{
  layout.validate();
  if (coords.size() != layout.n_coords())
  {
    throw StructureError("layout: coordinate vector has the wrong length");
  }
  const int np = layout.np, ni = layout.ni, no = layout.no, ns = layout.n_states();
  int pos = 0;
  struct Dyn
  {
    Complex lambda0;
    CVector lin;
  };
  std::vector<Dyn> dyn;
  for (const auto &blk : layout.blocks)
  {
    Dyn d{coords(pos++), CVector(np)};
    for (int k = 0; k < np; k++)
    {
      d.lin(k) = coords(pos++);
    }
    if (blk.kind == BlockKind::Conj2x2)
    {
      d.lambda0 += Complex(0.0, coords(pos++));
      for (int k = 0; k < np; k++)
      {
        d.lin(k) += Complex(0.0, coords(pos++));
      }
    }
    dyn.push_back(std::move(d));
  }
  std::vector<RMatrix> B(layout.b_fns.size(), RMatrix(ns, ni));
  for (auto &Bt : B)
  {
    for (int i = 0; i < ns; i++)
    {
      for (int k = 0; k < ni; k++)
      {
        Bt(i, k) = coords(pos++);
      }
    }
  }
  std::vector<RMatrix> C(layout.c_fns.size(), RMatrix(no, ns));
  for (auto &Ct : C)
  {
    for (int k = 0; k < no; k++)
    {
      for (int j = 0; j < ns; j++)
      {
        Ct(k, j) = coords(pos++);
      }
    }
  }

  std::vector<PoleResidueMode> modes;
  int r = 0;
  for (std::size_t bi = 0; bi < layout.blocks.size(); bi++)
  {
    RankOneResidue res;
    if (layout.blocks[bi].kind == BlockKind::Real1x1)
    {
      for (std::size_t t = 0; t < B.size(); t++)
      {
        res.b_terms.push_back({layout.b_fns[t], B[t].row(r).transpose().cast<Complex>()});
      }
      for (std::size_t t = 0; t < C.size(); t++)
      {
        res.c_terms.push_back({layout.c_fns[t], C[t].col(r).cast<Complex>()});
      }
      modes.push_back({dyn[bi].lambda0, dyn[bi].lin, std::move(res)});
      r += 1;
      continue;
    }
    RankOneResidue conj_res;
    for (std::size_t t = 0; t < B.size(); t++)
    {
      CVector b(ni);
      for (int k = 0; k < ni; k++)
      {
        b(k) = Complex(B[t](r, k), B[t](r + 1, k)) / 2.0;
      }
      res.b_terms.push_back({layout.b_fns[t], b});
      conj_res.b_terms.push_back({layout.b_fns[t], b.conjugate()});
    }
    for (std::size_t t = 0; t < C.size(); t++)
    {
      CVector c(no);
      for (int k = 0; k < no; k++)
      {
        c(k) = Complex(C[t](k, r), C[t](k, r + 1));
      }
      res.c_terms.push_back({layout.c_fns[t], c});
      conj_res.c_terms.push_back({layout.c_fns[t], c.conjugate()});
    }
    modes.push_back({dyn[bi].lambda0, dyn[bi].lin, std::move(res)});
    modes.push_back({std::conj(dyn[bi].lambda0), dyn[bi].lin.conjugate(), std::move(conj_res)});
    r += 2;
  }
  return PoleResidueModel(np, ni, no, std::move(modes), true);
}

RVector pack(const PoleResidueModel &rom, const DecisionLayout &layout)
{
  const RVector all = layout_coords(rom, layout);
  const auto mask = layout.free_mask();
  RVector x(layout.n_free());
  int j = 0;
  for (int i = 0; i < all.size(); i++)
  {
    if (mask[i])
    {
      x(j++) = all(i);
    }
  }
  return x;
}

PoleResidueModel unpack(const RVector &x, const DecisionLayout &layout,
                        const PoleResidueModel &tmpl)
{
  RVector all = layout_coords(tmpl, layout);
  const auto mask = layout.free_mask();
  if (x.size() != layout.n_free())
  {
    throw StructureError("unpack: decision vector length differs from the free count");
  }
  int j = 0;
  for (int i = 0; i < all.size(); i++)
  {
    if (mask[i])
    {
      all(i) = x(j++);
    }
  }
  return model_from_coords(all, layout);
}

}  // namespace parrom
