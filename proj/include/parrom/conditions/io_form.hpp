// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CONDITIONS_IO_FORM_HPP
#define PARROM_CONDITIONS_IO_FORM_HPP

#include <vector>
#include "parrom/conditions/general.hpp"
#include "parrom/conditions/report.hpp"
#include "parrom/model/pole_residue.hpp"

namespace parrom
{

//
// A model is in io form on two parameters when its poles are constant and
//   H(s, q) = H11(s) + q1 H12(s) + q2 H21(s) + q1 q2 H22(s),
// i.e. rank-one modes have b(q) = b1 + q1 b2 and c(q) = c1 + q2 c2, and full residues
// only use the monomials 1, q1, q2, q1 q2.
//

// Auxiliary transfer function [[H11, H12], [H21, H22]] (2no x 2ni) in pole-residue form.
// StructureError if the model is not in io form.
ModelAtQ build_aux_tf(const PoleResidueModel &model);

// [I, q2 I] aux [I; q1 I]. q may be complex.
CMatrix recombine_aux(const CMatrix &aux, Complex q1, Complex q2, int ni, int no);

// Gram matrices of {1, q} on [0, 1] tensored with identities: [[I, I/2], [I/2, I/3]].
struct MomentWeights
{
  RMatrix wb;  // 2ni x 2ni
  RMatrix wc;  // 2no x 2no
};

MomentWeights moment_weights(int ni, int no);

// Squared H2 (x) L2 error over [0, 1]^2 in closed form:
//   sum_{i,j} trace(E_j^* Wc E_i Wb) / (-p_i - conj(p_j))
// over the terms E_i / (s - p_i) of the auxiliary error fom_aux - rom_aux.
double io_h2l2_error_sq(const ModelAtQ &fom_aux, const ModelAtQ &rom_aux);

// Per-mode moment directions: bb = Wb [b1; b2], cc = Wc [c1; c2].
struct IoDirections
{
  CVector bb, cc;
};

IoDirections io_directions(const PoleResidueModel &rom, int mode);

//
// Weighted Hermite conditions at -conj(lambda_l) for every listed mode (all if empty):
//   thm4_1:  Haux bb = Hraux bb,  thm4_2:  cc^* Haux = cc^* Hraux,
//   thm4_3:  cc^* Haux' bb = cc^* Hraux' bb.
//
std::vector<ConditionReport> check_thm4(const ModelAtQ &fom_aux, const PoleResidueModel &rom,
                                        const std::vector<int> &modes = {});
std::vector<ConditionReport> check_thm4(const PoleResidueModel &fom,
                                        const PoleResidueModel &rom,
                                        const std::vector<int> &modes = {});

// alpha = {1}, beta = {1, q1}, gamma = {1, q2}.
ConditionBasis io_form_basis();

//
// Relates check_thm3 on [0, 1]^2 with io_form_basis to check_thm4:
//   [thm3_a[1]; thm3_a[q2]] = Wc thm4_1,  [thm3_b[1], thm3_b[q1]] = thm4_2 Wb,
//   thm3_c[1] = thm4_3,
// compared on both sides.
//
CrossCheck cross_check_thm3_thm4(const std::vector<ConditionReport> &thm3,
                                 const std::vector<ConditionReport> &thm4, int ni, int no);

//
// Line conditions for SISO io-form pairs. With q1* = bb_2 / bb_1 and
// q2* = conj(cc_2) / conj(cc_1), for each mode and each sample t:
//   cor_1:  H(s, q1*, t)         cor_2:  d/dq2 H(s, q1*, t)
//   cor_3:  H(s, t, q2*)         cor_4:  d/dq1 H(s, t, q2*)
//   cor_5:  dH/ds(s, q1*, q2*)   (reported once per mode)
// at s = -conj(lambda_l). Modes with bb_1 = 0 or cc_1 = 0 get skipped reports.
//
std::vector<ConditionReport> check_corollary_lines(const ModelAtQ &fom_aux,
                                                   const PoleResidueModel &rom,
                                                   const std::vector<double> &samples,
                                                   const std::vector<int> &modes = {});

}  // namespace parrom

#endif  // PARROM_CONDITIONS_IO_FORM_HPP
