// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CONDITIONS_GENERAL_HPP
#define PARROM_CONDITIONS_GENERAL_HPP

#include <vector>
#include "parrom/conditions/report.hpp"
#include "parrom/model/pole_residue.hpp"
#include "parrom/norms/parallel.hpp"

namespace parrom
{

// Scalar functions of the separable ROM data: alpha_i multiply the A terms, beta_j the B
// terms and gamma_k the C terms.
struct ConditionBasis
{
  std::vector<ScalarParamFunction> alpha, beta, gamma;
};

// alpha = {1} plus q_k for every coordinate some pole depends on; beta and gamma are the
// distinct functions of the b and c terms, in order of first appearance.
ConditionBasis basis_from_model(const PoleResidueModel &rom);

// Below this per-axis order check_thm3 marks its reports uncertified.
constexpr int kMinCertifiedOrder = 16;

//
// Integral optimality conditions for a diagonal ROM with rank-one residues, by tensor
// Gauss-Legendre quadrature over dom. For every listed mode l (all modes if empty):
//   thm3_a, k:  int gamma_k H(-conj(lambda_l(q)), q) b_l(q)
//   thm3_b, j:  int beta_j c_l(q)^* H(-conj(lambda_l(q)), q)
//   thm3_c, i:  int alpha_i c_l(q)^* dH/ds(-conj(lambda_l(q)), q) b_l(q)
// with lhs from the FOM and rhs from the ROM. Reports are ordered by mode, then a, b, c,
// then basis index.
//
std::vector<ConditionReport> check_thm3(const PoleResidueModel &fom,
                                        const PoleResidueModel &rom,
                                        const ParameterDomain &dom,
                                        const ConditionBasis &basis,
                                        const std::vector<int> &modes = {},
                                        Execution ex = Execution::Parallel);

// One mode per conjugate pair (the first of each adjacent pair) plus every real mode. For
// a model without the real-realizable flag, every mode.
std::vector<int> pair_representatives(const PoleResidueModel &rom);

// True when the rank-one residue of mode l is identically zero.
bool has_zero_residue(const PoleResidueMode &mode);

}  // namespace parrom

#endif  // PARROM_CONDITIONS_GENERAL_HPP
