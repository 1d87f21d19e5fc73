// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/conditions/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace parrom
{

namespace
{

constexpr double kFloor = 1e-300;

constexpr std::array<std::pair<ConditionId, const char *>, 15> kNames = {{
    {ConditionId::Thm3A, "thm3_a"},
    {ConditionId::Thm3B, "thm3_b"},
    {ConditionId::Thm3C, "thm3_c"},
    {ConditionId::Thm4_1, "thm4_1"},
    {ConditionId::Thm4_2, "thm4_2"},
    {ConditionId::Thm4_3, "thm4_3"},
    {ConditionId::Thm5_1, "thm5_1"},
    {ConditionId::Thm5_2, "thm5_2"},
    {ConditionId::Thm5_3, "thm5_3"},
    {ConditionId::Thm5_4, "thm5_4"},
    {ConditionId::Cor1, "cor_1"},
    {ConditionId::Cor2, "cor_2"},
    {ConditionId::Cor3, "cor_3"},
    {ConditionId::Cor4, "cor_4"},
    {ConditionId::Cor5, "cor_5"},
}};

}  // namespace

const char *condition_name(ConditionId id)
{
  for (const auto &[key, name] : kNames)
  {
    if (key == id)
    {
      return name;
    }
  }
  return "unknown";
}

std::optional<ConditionId> condition_from_name(std::string_view name)
{
  for (const auto &[key, value] : kNames)
  {
    if (name == value)
    {
      return key;
    }
  }
  return std::nullopt;
}

double relative_difference(const CMatrix &x, const CMatrix &y)
{
  return (x - y).norm() / std::max(x.norm(), kFloor);
}

ConditionReport make_report(ConditionId id, int mode, int index, CMatrix lhs, CMatrix rhs)
{
  ConditionReport r;
  r.id = id;
  r.mode = mode;
  r.index = index;
  r.abs_err = (lhs - rhs).norm();
  r.rel_err = r.abs_err / std::max(lhs.norm(), kFloor);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

ConditionReport degenerate_report(ConditionId id, int mode, int index, int rows, int cols)
{
  ConditionReport r =
      make_report(id, mode, index, CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols));
  r.degenerate = true;
  r.note = "zero residue";
  return r;
}

double max_rel_err(const std::vector<ConditionReport> &reports)
{
  double worst = 0.0;
  for (const auto &r : reports)
  {
    if (!r.skipped)
    {
      worst = std::max(worst, std::isnan(r.rel_err) ? INFINITY : r.rel_err);
    }
  }
  return worst;
}

bool all_within(const std::vector<ConditionReport> &reports, double tol)
{
  return std::all_of(reports.begin(), reports.end(),
                     [tol](const ConditionReport &r)
                     { return r.skipped || (r.certified && r.rel_err <= tol); });
}

double CrossCheck::max_rel_diff() const
{
  double worst = 0.0;
  for (const auto &e : entries)
  {
    for (const double d : {e.lhs_rel_diff, e.rhs_rel_diff})
    {
      worst = std::max(worst, std::isnan(d) ? INFINITY : d);
    }
  }
  return worst;
}

}  // namespace parrom
