// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_MODEL_STATE_SPACE_HPP
#define PARROM_MODEL_STATE_SPACE_HPP

#include <vector>
#include "parrom/model/param_function.hpp"
#include "parrom/types.hpp"

namespace parrom
{

struct MatrixTerm
{
  ScalarParamFunction f;
  CMatrix matrix;
};

//
// Parameter-separable full-order model
//   E(q) x' = A(q) x + B(q) u,  y = C(q) x,
// with each of E, A, B, C a sum of (scalar function) * (constant matrix). An empty E list
// stands for E(q) = I.
//
class ParametricStateSpace
{
public:
  ParametricStateSpace() = default;
  ParametricStateSpace(int np, std::vector<MatrixTerm> E, std::vector<MatrixTerm> A,
                       std::vector<MatrixTerm> B, std::vector<MatrixTerm> C);

  int np() const { return np_; }
  int n() const { return n_; }
  int ni() const { return ni_; }
  int no() const { return no_; }

  const std::vector<MatrixTerm> &E_terms() const { return E_; }
  const std::vector<MatrixTerm> &A_terms() const { return A_; }
  const std::vector<MatrixTerm> &B_terms() const { return B_; }
  const std::vector<MatrixTerm> &C_terms() const { return C_; }

  CMatrix E(ParamView q) const;
  CMatrix A(ParamView q) const;
  CMatrix B(ParamView q) const;
  CMatrix C(ParamView q) const;

  // True when E(q) = I identically (checked on the monomial expansion, not by sampling).
  bool has_identity_e() const;

  // Dense resolvent evaluation C(q) (s E(q) - A(q))^{-1} B(q).
  CMatrix transfer(Complex s, ParamView q) const;

  // Keep the first r states: A[:r,:r], B[:r,:], C[:,:r]; E must be the identity.
  ParametricStateSpace truncate(int r) const;

private:
  int np_ = 0, n_ = 0, ni_ = 0, no_ = 0;
  std::vector<MatrixTerm> E_, A_, B_, C_;
};

}  // namespace parrom

#endif  // PARROM_MODEL_STATE_SPACE_HPP
