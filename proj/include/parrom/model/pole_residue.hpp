// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_MODEL_POLE_RESIDUE_HPP
#define PARROM_MODEL_POLE_RESIDUE_HPP

#include <optional>
#include <variant>
#include <vector>
#include "parrom/model/param_function.hpp"
#include "parrom/model/state_space.hpp"
#include "parrom/types.hpp"

namespace parrom
{

struct VectorTerm
{
  ScalarParamFunction f;
  CVector vector;
};

// Residue c(q) b(q)^* with parameter-separable factors.
struct RankOneResidue
{
  std::vector<VectorTerm> b_terms;  // length ni vectors
  std::vector<VectorTerm> c_terms;  // length no vectors
};

// General residue R(q) = sum_t f_t(q) R_t, used for full-order models whose residues are
// not rank one.
struct FullResidue
{
  std::vector<MatrixTerm> terms;  // no x ni matrices
};

//
// One term c(q) b(q)^* / (s - lambda(q)) with an affine pole
//   lambda(q) = lambda0 + sum_k q_k lambda_lin[k].
//
struct PoleResidueMode
{
  Complex lambda0;
  CVector lambda_lin;
  std::variant<RankOneResidue, FullResidue> residue;

  Complex pole(ParamView q) const;
  bool is_rank_one() const { return std::holds_alternative<RankOneResidue>(residue); }
  const RankOneResidue &rank_one() const;

  // Rank-one factors at q. Only valid for rank-one modes.
  CVector b(ParamView q) const;
  CVector c(ParamView q) const;
  CMatrix residue_at(ParamView q, int ni, int no) const;
};

// Box [lo, hi] in R^np with Lebesgue measure and a Gauss-Legendre order per axis.
struct ParameterDomain
{
  std::vector<double> lo, hi;
  std::vector<int> quad_order;

  ParameterDomain() = default;
  ParameterDomain(std::vector<double> lo, std::vector<double> hi, int order = 64);

  int np() const { return static_cast<int>(lo.size()); }
  std::vector<ParamPoint> vertices() const;
  ParameterDomain with_quad_order(int order) const;
};

//
// Pole-residue transfer function H(s, q) = sum_l R_l(q) / (s - lambda_l(q)).
//
class PoleResidueModel
{
public:
  PoleResidueModel() = default;
  PoleResidueModel(int np, int ni, int no, std::vector<PoleResidueMode> modes,
                   bool real_realizable = false);

  int np() const { return np_; }
  int ni() const { return ni_; }
  int no() const { return no_; }
  int order() const { return static_cast<int>(modes_.size()); }
  const std::vector<PoleResidueMode> &modes() const { return modes_; }
  const PoleResidueMode &mode(int l) const { return modes_[l]; }
  bool real_realizable() const { return real_realizable_; }
  bool all_rank_one() const;

  // Index of the conjugate partner of mode l for real-realizable models (pairs are stored
  // adjacent; real modes are their own partner).
  int conjugate_partner(int l) const;

private:
  int np_ = 0, ni_ = 0, no_ = 0;
  std::vector<PoleResidueMode> modes_;
  bool real_realizable_ = false;
};

// Poles and residue matrices of a model frozen at one parameter value.
struct ModelAtQ
{
  std::vector<Complex> poles;
  std::vector<CMatrix> residues;
  int ni = 0, no = 0;
};

ModelAtQ freeze(const PoleResidueModel &model, ParamView q);

// |s - lambda| below this raises PoleHit.
bool is_pole_hit(Complex s, Complex lambda);

CMatrix eval_transfer(const PoleResidueModel &model, Complex s, ParamView q);
CMatrix eval_transfer_ds(const PoleResidueModel &model, Complex s, ParamView q);
CMatrix eval_transfer(const ModelAtQ &model, Complex s);
CMatrix eval_transfer_ds(const ModelAtQ &model, Complex s);

// Converts a state-space model whose A terms are simultaneously block diagonal in 1x1 and
// 2x2 rotation blocks [[sigma, omega], [-omega, sigma]] into modal form. The 2x2 block
// at rows (r, r+1) yields the pair sigma +- i omega with right eigenvectors [1, +-i] and
// left eigenvectors [1, -+i] / 2, so c = C[:,r] +- i C[:,r+1] and b^* = (B[r,:] -+ i
// B[r+1,:]) / 2. If a domain is given, every mode must be stable on it.
PoleResidueModel state_space_to_pole_residue(
    const ParametricStateSpace &sys, const std::optional<ParameterDomain> &dom = std::nullopt);

struct StabilityResult
{
  bool stable = true;
  int mode = -1;       // violating mode on failure
  ParamPoint witness;  // violating vertex on failure
};

// Exact for affine poles: Re lambda(q) is affine, so its maximum over the box is attained
// at a vertex.
StabilityResult check_stability(const PoleResidueModel &model, const ParameterDomain &dom);

// Throws Instability with the witness when check_stability fails.
void require_stable(const PoleResidueModel &model, const ParameterDomain &dom,
                    const char *what);

}  // namespace parrom

#endif  // PARROM_MODEL_POLE_RESIDUE_HPP
