// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CONDITIONS_DYN_FORM_HPP
#define PARROM_CONDITIONS_DYN_FORM_HPP

#include <vector>
#include "parrom/conditions/general.hpp"
#include "parrom/conditions/report.hpp"
#include "parrom/model/pole_residue.hpp"

namespace parrom
{

// StructureError unless the model has one parameter and parameter-independent residues.
// Poles are affine by construction.
void require_dyn_form(const PoleResidueModel &model, const char *what);

struct GValue
{
  CMatrix g, dg_ds_a, dg_ds_b;
};

//
// G(s_a, s_b) = sum_i f_{nu_i(a), nu_i(b)}(s_a, s_b) R_i and its two partial derivatives,
// for a model in dyn form on [a, b].
//
GValue eval_G(const PoleResidueModel &model, Complex s_a, Complex s_b, double a, double b);

//
// Modified-function conditions at (s_a, s_b) = (-conj(lambda_l(a)), -conj(lambda_l(b))):
//   thm5_1:  G b_l,   thm5_2:  c_l^* G,
//   thm5_3:  c_l^* dG/ds_a b_l,   thm5_4:  c_l^* dG/ds_b b_l,
// with lhs from the FOM and rhs from the ROM, for each listed mode (all if empty).
//
std::vector<ConditionReport> check_thm5(const PoleResidueModel &fom,
                                        const PoleResidueModel &rom, double a, double b,
                                        const std::vector<int> &modes = {},
                                        Execution ex = Execution::Parallel);

// alpha = {1, q}, beta = gamma = {1}: the quadrature conditions that correspond to thm5.
ConditionBasis dyn_form_basis();

//
// Compares check_thm3 (with dyn_form_basis) against check_thm5 for the same modes:
//   thm3_a[0] = thm5_1,  thm3_b[0] = thm5_2,
//   thm3_c[0] = thm5_3 + thm5_4,  thm3_c[1] = a thm5_3 + b thm5_4.
// StructureError if a mode lacks one of the required reports.
//
CrossCheck cross_check_thm3_thm5(const std::vector<ConditionReport> &thm3,
                                 const std::vector<ConditionReport> &thm5, double a, double b);

}  // namespace parrom

#endif  // PARROM_CONDITIONS_DYN_FORM_HPP
