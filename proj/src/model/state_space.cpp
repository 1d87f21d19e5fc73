// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/model/state_space.hpp"

#include <map>

namespace parrom
{

namespace
{

void CheckTerms(const std::vector<MatrixTerm> &terms, int np, const char *name, int &rows,
                int &cols)
{
  for (const auto &t : terms)
  {
    if (t.f.np() != np)
    {
      throw StructureError(std::string("ParametricStateSpace: ") + name +
                           " term has wrong parameter dimension");
    }
    if (rows < 0)
    {
      rows = static_cast<int>(t.matrix.rows());
      cols = static_cast<int>(t.matrix.cols());
    }
    else if (t.matrix.rows() != rows || t.matrix.cols() != cols)
    {
      throw StructureError(std::string("ParametricStateSpace: ") + name +
                           " terms do not share a shape");
    }
  }
}

CMatrix Evaluate(const std::vector<MatrixTerm> &terms, ParamView q, int rows, int cols)
{
  CMatrix M = CMatrix::Zero(rows, cols);
  for (const auto &t : terms)
  {
    M += t.f(q) * t.matrix;
  }
  return M;
}

}  // namespace

ParametricStateSpace::ParametricStateSpace(int np, std::vector<MatrixTerm> E,
                                           std::vector<MatrixTerm> A,
                                           std::vector<MatrixTerm> B,
                                           std::vector<MatrixTerm> C)
  : np_(np), E_(std::move(E)), A_(std::move(A)), B_(std::move(B)), C_(std::move(C))
{
  if (np_ < 1)
  {
    throw StructureError("ParametricStateSpace: parameter dimension must be >= 1");
  }
  if (A_.empty() || B_.empty() || C_.empty())
  {
    throw StructureError("ParametricStateSpace: A, B and C need at least one term");
  }
  int er = -1, ec = -1, ar = -1, ac = -1, br = -1, bc = -1, cr = -1, cc = -1;
  CheckTerms(E_, np_, "E", er, ec);
  CheckTerms(A_, np_, "A", ar, ac);
  CheckTerms(B_, np_, "B", br, bc);
  CheckTerms(C_, np_, "C", cr, cc);
  n_ = ar;
  ni_ = bc;
  no_ = cr;
  if (ac != n_ || br != n_ || cc != n_ || (er >= 0 && (er != n_ || ec != n_)))
  {
    throw StructureError("ParametricStateSpace: inconsistent dimensions n, ni, no");
  }
}

CMatrix ParametricStateSpace::E(ParamView q) const
{
  if (E_.empty())
  {
    return CMatrix::Identity(n_, n_);
  }
  return Evaluate(E_, q, n_, n_);
}

CMatrix ParametricStateSpace::A(ParamView q) const { return Evaluate(A_, q, n_, n_); }
CMatrix ParametricStateSpace::B(ParamView q) const { return Evaluate(B_, q, n_, ni_); }
CMatrix ParametricStateSpace::C(ParamView q) const { return Evaluate(C_, q, no_, n_); }

bool ParametricStateSpace::has_identity_e() const
{
  if (E_.empty())
  {
    return true;
  }
  std::map<std::vector<int>, CMatrix> by_monomial;
  for (const auto &t : E_)
  {
    for (const auto &m : t.f.terms())
    {
      auto [it, inserted] = by_monomial.try_emplace(m.exponents, CMatrix::Zero(n_, n_));
      it->second += m.coeff * t.matrix;
    }
  }
  const std::vector<int> zero(np_, 0);
  const double tol = 1e-14 * n_;
  for (const auto &[exps, M] : by_monomial)
  {
    const CMatrix target = (exps == zero) ? CMatrix(CMatrix::Identity(n_, n_)) : CMatrix(CMatrix::Zero(n_, n_));
    if ((M - target).cwiseAbs().maxCoeff() > tol)
    {
      return false;
    }
  }
  return by_monomial.count(zero) > 0;
}

CMatrix ParametricStateSpace::transfer(Complex s, ParamView q) const
{
  const CMatrix K = s * E(q) - A(q);
  return C(q) * K.partialPivLu().solve(B(q));
}

ParametricStateSpace ParametricStateSpace::truncate(int r) const
{
  if (r < 1 || r > n_)
  {
    throw StructureError("ParametricStateSpace: truncation order out of range");
  }
  if (!has_identity_e())
  {
    throw StructureError("ParametricStateSpace: truncation requires E = I");
  }
  std::vector<MatrixTerm> A, B, C;
  for (const auto &t : A_)
  {
    A.push_back({t.f, t.matrix.topLeftCorner(r, r)});
  }
  for (const auto &t : B_)
  {
    B.push_back({t.f, t.matrix.topRows(r)});
  }
  for (const auto &t : C_)
  {
    C.push_back({t.f, t.matrix.leftCols(r)});
  }
  return ParametricStateSpace(np_, {}, std::move(A), std::move(B), std::move(C));
}

}  // namespace parrom
