// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/model/pole_residue.hpp"

#include <cmath>
#include <sstream>

namespace parrom
{

using namespace std::complex_literals;

Complex PoleResidueMode::pole(ParamView q) const
{
  Complex lam = lambda0;
  for (Eigen::Index k = 0; k < lambda_lin.size(); k++)
  {
    lam += q[k] * lambda_lin(k);
  }
  return lam;
}

const RankOneResidue &PoleResidueMode::rank_one() const
{
  if (!is_rank_one())
  {
    throw StructureError("PoleResidueMode: rank-one factors requested from a full residue");
  }
  return std::get<RankOneResidue>(residue);
}

namespace
{

CVector SumTerms(const std::vector<VectorTerm> &terms, ParamView q)
{
  CVector v = CVector::Zero(terms.front().vector.size());
  for (const auto &t : terms)
  {
    v += t.f(q) * t.vector;
  }
  return v;
}

}  // namespace

CVector PoleResidueMode::b(ParamView q) const { return SumTerms(rank_one().b_terms, q); }

CVector PoleResidueMode::c(ParamView q) const { return SumTerms(rank_one().c_terms, q); }

CMatrix PoleResidueMode::residue_at(ParamView q, int ni, int no) const
{
  if (is_rank_one())
  {
    return c(q) * b(q).adjoint();
  }
  CMatrix R = CMatrix::Zero(no, ni);
  for (const auto &t : std::get<FullResidue>(residue).terms)
  {
    R += t.f(q) * t.matrix;
  }
  return R;
}

ParameterDomain::ParameterDomain(std::vector<double> lo_, std::vector<double> hi_, int order)
  : lo(std::move(lo_)), hi(std::move(hi_)), quad_order(lo.size(), order)
{
  if (lo.empty() || lo.size() != hi.size())
  {
    throw StructureError("ParameterDomain: lo and hi must be nonempty and of equal length");
  }
  for (std::size_t k = 0; k < lo.size(); k++)
  {
    if (!(lo[k] < hi[k]))
    {
      throw StructureError("ParameterDomain: need lo < hi on every axis");
    }
  }
  if (order < 1)
  {
    throw StructureError("ParameterDomain: quadrature order must be >= 1");
  }
}

std::vector<ParamPoint> ParameterDomain::vertices() const
{
  const int np_ = np();
  std::vector<ParamPoint> v;
  for (int mask = 0; mask < (1 << np_); mask++)
  {
    ParamPoint p(np_);
    for (int k = 0; k < np_; k++)
    {
      p[k] = ((mask >> k) & 1) ? hi[k] : lo[k];
    }
    v.push_back(std::move(p));
  }
  return v;
}

ParameterDomain ParameterDomain::with_quad_order(int order) const
{
  return ParameterDomain(lo, hi, order);
}

PoleResidueModel::PoleResidueModel(int np, int ni, int no, std::vector<PoleResidueMode> modes,
                                   bool real_realizable)
  : np_(np), ni_(ni), no_(no), modes_(std::move(modes)), real_realizable_(real_realizable)
{
  if (np_ < 1 || ni_ < 1 || no_ < 1)
  {
    throw StructureError("PoleResidueModel: np, ni, no must all be >= 1");
  }
  for (const auto &m : modes_)
  {
    if (m.lambda_lin.size() != np_)
    {
      throw StructureError("PoleResidueModel: lambda_lin length differs from np");
    }
    auto check_fn = [&](const ScalarParamFunction &f)
    {
      if (f.np() != np_)
      {
        throw StructureError("PoleResidueModel: residue function has wrong parameter dimension");
      }
    };
    if (m.is_rank_one())
    {
      const auto &r1 = m.rank_one();
      if (r1.b_terms.empty() || r1.c_terms.empty())
      {
        throw StructureError("PoleResidueModel: rank-one residue needs b and c terms");
      }
      for (const auto &t : r1.b_terms)
      {
        check_fn(t.f);
        if (t.vector.size() != ni_)
        {
          throw StructureError("PoleResidueModel: b vector length differs from ni");
        }
      }
      for (const auto &t : r1.c_terms)
      {
        check_fn(t.f);
        if (t.vector.size() != no_)
        {
          throw StructureError("PoleResidueModel: c vector length differs from no");
        }
      }
    }
    else
    {
      for (const auto &t : std::get<FullResidue>(m.residue).terms)
      {
        check_fn(t.f);
        if (t.matrix.rows() != no_ || t.matrix.cols() != ni_)
        {
          throw StructureError("PoleResidueModel: residue matrix is not no x ni");
        }
      }
    }
  }
}

bool PoleResidueModel::all_rank_one() const
{
  for (const auto &m : modes_)
  {
    if (!m.is_rank_one())
    {
      return false;
    }
  }
  return true;
}

int PoleResidueModel::conjugate_partner(int l) const
{
  const auto &m = modes_[l];
  auto is_conj = [&](const PoleResidueMode &o)
  {
    return o.lambda0 == std::conj(m.lambda0) && o.lambda_lin == m.lambda_lin.conjugate();
  };
  if (m.lambda0.imag() == 0.0 && m.lambda_lin.imag().isZero(0.0))
  {
    return l;
  }
  if (l + 1 < order() && is_conj(modes_[l + 1]))
  {
    return l + 1;
  }
  if (l > 0 && is_conj(modes_[l - 1]))
  {
    return l - 1;
  }
  return l;
}

ModelAtQ freeze(const PoleResidueModel &model, ParamView q)
{
  ModelAtQ f;
  f.ni = model.ni();
  f.no = model.no();
  f.poles.reserve(model.order());
  f.residues.reserve(model.order());
  for (const auto &m : model.modes())
  {
    f.poles.push_back(m.pole(q));
    f.residues.push_back(m.residue_at(q, model.ni(), model.no()));
  }
  return f;
}

bool is_pole_hit(Complex s, Complex lambda)
{
  return std::abs(s - lambda) < 1e-12 * (1.0 + std::abs(s) + std::abs(lambda));
}

namespace
{

void ThrowPoleHit(Complex s, Complex lambda, std::size_t l)
{
  std::ostringstream msg;
  msg << "evaluation point s = " << s << " hits pole " << l << " at " << lambda;
  throw PoleHit(msg.str());
}

}  // namespace

CMatrix eval_transfer(const ModelAtQ &model, Complex s)
{
  CMatrix H = CMatrix::Zero(model.no, model.ni);
  for (std::size_t l = 0; l < model.poles.size(); l++)
  {
    if (is_pole_hit(s, model.poles[l]))
    {
      ThrowPoleHit(s, model.poles[l], l);
    }
    H += model.residues[l] / (s - model.poles[l]);
  }
  return H;
}

CMatrix eval_transfer_ds(const ModelAtQ &model, Complex s)
{
  CMatrix H = CMatrix::Zero(model.no, model.ni);
  for (std::size_t l = 0; l < model.poles.size(); l++)
  {
    if (is_pole_hit(s, model.poles[l]))
    {
      ThrowPoleHit(s, model.poles[l], l);
    }
    const Complex d = s - model.poles[l];
    H -= model.residues[l] / (d * d);
  }
  return H;
}

CMatrix eval_transfer(const PoleResidueModel &model, Complex s, ParamView q)
{
  return eval_transfer(freeze(model, q), s);
}

CMatrix eval_transfer_ds(const PoleResidueModel &model, Complex s, ParamView q)
{
  return eval_transfer_ds(freeze(model, q), s);
}

namespace
{

struct Block
{
  int row;
  int size;
};

std::vector<Block> BlockPartition(const ParametricStateSpace &sys)
{
  const int n = sys.n();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> pattern =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  for (const auto &t : sys.A_terms())
  {
    pattern = pattern.array() || (t.matrix.array() != Complex(0.0)).array();
  }
  std::vector<Block> blocks;
  for (int i = 0; i < n;)
  {
    const int size = (i + 1 < n && (pattern(i, i + 1) || pattern(i + 1, i))) ? 2 : 1;
    for (int r = i; r < i + size; r++)
    {
      for (int c = 0; c < n; c++)
      {
        if ((c < i || c >= i + size) && (pattern(r, c) || pattern(c, r)))
        {
          std::ostringstream msg;
          msg << "state_space_to_pole_residue: A is not block diagonal in 1x1/2x2 blocks "
                 "(coupling between states "
              << r << " and " << c << ")";
          throw StructureError(msg.str());
        }
      }
    }
    blocks.push_back({i, size});
    i += size;
  }
  return blocks;
}

}  // namespace

PoleResidueModel state_space_to_pole_residue(const ParametricStateSpace &sys,
                                             const std::optional<ParameterDomain> &dom)
{
  if (!sys.has_identity_e())
  {
    throw StructureError("state_space_to_pole_residue: E(q) must be the identity");
  }
  const int np = sys.np();
  struct AffineTerm
  {
    double c0;
    std::vector<double> lin;
  };
  std::vector<AffineTerm> affine;
  for (const auto &t : sys.A_terms())
  {
    if (!t.f.is_affine())
    {
      throw StructureError("state_space_to_pole_residue: A term functions must be affine in q");
    }
    AffineTerm a;
    t.f.affine_coefficients(a.c0, a.lin);
    affine.push_back(std::move(a));
  }

  auto pole_from = [&](auto &&entry)
  {
    // entry(k) is the eigenvalue contribution of A term k.
    Complex lambda0 = 0.0;
    CVector lin = CVector::Zero(np);
    for (std::size_t k = 0; k < affine.size(); k++)
    {
      const Complex mu = entry(k);
      lambda0 += affine[k].c0 * mu;
      for (int j = 0; j < np; j++)
      {
        lin(j) += affine[k].lin[j] * mu;
      }
    }
    return std::make_pair(lambda0, lin);
  };

  bool real = true;
  auto note_real = [&](const CMatrix &M) { real = real && M.imag().isZero(0.0); };
  for (const auto &t : sys.A_terms())
  {
    note_real(t.matrix);
  }
  for (const auto &t : sys.B_terms())
  {
    note_real(t.matrix);
  }
  for (const auto &t : sys.C_terms())
  {
    note_real(t.matrix);
  }

  std::vector<PoleResidueMode> modes;
  for (const auto &blk : BlockPartition(sys))
  {
    const int r = blk.row;
    if (blk.size == 1)
    {
      auto [lambda0, lin] = pole_from([&](std::size_t k) { return sys.A_terms()[k].matrix(r, r); });
      RankOneResidue res;
      for (const auto &t : sys.B_terms())
      {
        res.b_terms.push_back({t.f, t.matrix.row(r).adjoint()});
      }
      for (const auto &t : sys.C_terms())
      {
        res.c_terms.push_back({t.f, t.matrix.col(r)});
      }
      modes.push_back({lambda0, lin, std::move(res)});
      continue;
    }
    for (const auto &t : sys.A_terms())
    {
      const auto M = t.matrix.block(r, r, 2, 2);
      const double tol = 1e-13 * (1.0 + M.cwiseAbs().maxCoeff());
      if (std::abs(M(0, 0) - M(1, 1)) > tol || std::abs(M(0, 1) + M(1, 0)) > tol)
      {
        std::ostringstream msg;
        msg << "state_space_to_pole_residue: 2x2 block at row " << r
            << " is not of the form [[sigma, omega], [-omega, sigma]]";
        throw StructureError(msg.str());
      }
    }
    for (const double sign : {1.0, -1.0})
    {
      auto [lambda0, lin] = pole_from(
          [&](std::size_t k)
          {
            const auto &M = sys.A_terms()[k].matrix;
            return M(r, r) + sign * 1i * M(r, r + 1);
          });
      RankOneResidue res;
      for (const auto &t : sys.B_terms())
      {
        // b = (w^* B)^* with w^* = [1, -sign*i] / 2.
        const CVector wB = (t.matrix.row(r) - sign * 1i * t.matrix.row(r + 1)).transpose() / 2.0;
        res.b_terms.push_back({t.f, wB.conjugate()});
      }
      for (const auto &t : sys.C_terms())
      {
        res.c_terms.push_back({t.f, t.matrix.col(r) + sign * 1i * t.matrix.col(r + 1)});
      }
      modes.push_back({lambda0, lin, std::move(res)});
    }
  }
  PoleResidueModel model(np, sys.ni(), sys.no(), std::move(modes), real);
  if (dom)
  {
    require_stable(model, *dom, "state_space_to_pole_residue");
  }
  return model;
}

StabilityResult check_stability(const PoleResidueModel &model, const ParameterDomain &dom)
{
  if (dom.np() != model.np())
  {
    throw StructureError("check_stability: domain dimension differs from model np");
  }
  const auto verts = dom.vertices();
  for (int l = 0; l < model.order(); l++)
  {
    for (const auto &v : verts)
    {
      if (!(model.mode(l).pole(v).real() < 0.0))
      {
        return {false, l, v};
      }
    }
  }
  return {};
}

void require_stable(const PoleResidueModel &model, const ParameterDomain &dom, const char *what)
{
  const auto res = check_stability(model, dom);
  if (!res.stable)
  {
    std::ostringstream msg;
    msg << what << ": mode " << res.mode << " has Re lambda >= 0 at q = (";
    for (std::size_t k = 0; k < res.witness.size(); k++)
    {
      msg << (k ? ", " : "") << res.witness[k];
    }
    msg << ")";
    throw Instability(msg.str(), res.mode, res.witness);
  }
}

}  // namespace parrom
