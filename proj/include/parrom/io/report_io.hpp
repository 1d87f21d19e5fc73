// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_IO_REPORT_IO_HPP
#define PARROM_IO_REPORT_IO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>
#include "parrom/conditions/report.hpp"
#include "parrom/io/json_io.hpp"
#include "parrom/optimize/bfgs.hpp"

namespace parrom
{

enum class ReportFormat
{
  Json,
  Csv,
  Table
};

// "json", "csv" or "table"; UsageError otherwise.
ReportFormat parse_format(std::string_view name);

struct ReportDocument
{
  std::string command;
  std::optional<OptimizationResult> result;
  std::vector<ConditionReport> conditions;
  std::vector<std::pair<std::string, CrossCheck>> cross_checks;
  std::vector<std::string> legend;
  std::vector<std::string> warnings;
  Json summary = Json::object();  // command-specific scalars
};

Json to_json(const ConditionReport &report);
Json to_json(const CrossCheck &check);
Json to_json(const OptimizationResult &result);

//
// JSON: {"schema": 1, "command", "summary", "conditions": [...], "cross_check": {...},
// "legend", "warnings", "optimization"} with keys sorted and doubles printed in shortest
// round-trip form. CSV: one row per condition. Table: fixed-width rows with rel_err and
// abs_err in %.4e, followed by cross-check, legend and warning lines.
//
std::string render_report(const ReportDocument &doc, ReportFormat format);
void emit_report(const ReportDocument &doc, ReportFormat format, const std::string &path);

// %.4e, e.g. 8.496e-9 -> "8.4960e-09".
std::string format_sci(double v);

}  // namespace parrom

#endif  // PARROM_IO_REPORT_IO_HPP
