// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CONDITIONS_REPORT_HPP
#define PARROM_CONDITIONS_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>
#include "parrom/types.hpp"

namespace parrom
{

enum class ConditionId
{
  Thm3A,  // integral of gamma_k H(-conj(lambda_l)) b_l
  Thm3B,  // integral of beta_j c_l^* H(-conj(lambda_l))
  Thm3C,  // integral of alpha_i c_l^* H'(-conj(lambda_l)) b_l
  Thm4_1,
  Thm4_2,
  Thm4_3,
  Thm5_1,
  Thm5_2,
  Thm5_3,
  Thm5_4,
  Cor1,
  Cor2,
  Cor3,
  Cor4,
  Cor5
};

// "thm3_a", ..., "thm5_4", "cor_1", ..., "cor_5".
const char *condition_name(ConditionId id);
std::optional<ConditionId> condition_from_name(std::string_view name);

//
// Both sides of one interpolation condition for ROM mode `mode`. index is the basis
// function index for the integral conditions and the sample index for line conditions
// (-1 otherwise). rel_err = ||lhs - rhs||_F / max(||lhs||_F, 1e-300).
//
struct ConditionReport
{
  ConditionId id = ConditionId::Thm3A;
  int mode = 0;
  int index = -1;
  std::optional<double> sample;
  CMatrix lhs, rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool degenerate = false;  // the mode has a zero residue; reported with rel_err 0
  bool skipped = false;     // hypothesis of the condition fails for this mode
  bool certified = true;    // false when the quadrature is too coarse to certify
  std::string note;
};

ConditionReport make_report(ConditionId id, int mode, int index, CMatrix lhs, CMatrix rhs);
ConditionReport degenerate_report(ConditionId id, int mode, int index, int rows, int cols);

// Largest rel_err over reports that were not skipped.
double max_rel_err(const std::vector<ConditionReport> &reports);
// Every checked report is certified and has rel_err <= tol.
bool all_within(const std::vector<ConditionReport> &reports, double tol);

// Agreement of two evaluation routes for the same quantity.
struct CrossCheckEntry
{
  std::string quantity;
  int mode = 0;
  double lhs_rel_diff = 0.0;
  double rhs_rel_diff = 0.0;
};

struct CrossCheck
{
  std::vector<CrossCheckEntry> entries;

  double max_rel_diff() const;
  bool passed(double tol) const { return max_rel_diff() <= tol; }
};

// ||x - y||_F / max(||x||_F, 1e-300).
double relative_difference(const CMatrix &x, const CMatrix &y);

}  // namespace parrom

#endif  // PARROM_CONDITIONS_REPORT_HPP
