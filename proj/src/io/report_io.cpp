// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/io/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace parrom
{

namespace
{

std::string Printf(const char *fmt, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string CsvField(const std::string &s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
  {
    return s;
  }
  std::string out = "\"";
  for (const char ch : s)
  {
    out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  }
  return out + "\"";
}

std::string Status(const ConditionReport &r)
{
  if (r.skipped)
  {
    return "skipped";
  }
  if (r.degenerate)
  {
    return "degenerate";
  }
  return r.certified ? "ok" : "uncertified";
}

std::string RenderCsv(const ReportDocument &doc)
{
  std::ostringstream out;
  out << "id,mode,index,sample,abs_err,rel_err,degenerate,skipped,certified,note\n";
  for (const auto &r : doc.conditions)
  {
    out << condition_name(r.id) << ',' << r.mode << ',' << r.index << ','
        << (r.sample ? Printf("%.17g", *r.sample) : "") << ',' << Printf("%.17g", r.abs_err)
        << ',' << Printf("%.17g", r.rel_err) << ',' << r.degenerate << ',' << r.skipped << ','
        << r.certified << ',' << CsvField(r.note) << '\n';
  }
  return out.str();
}

std::string RenderTable(const ReportDocument &doc)
{
  std::ostringstream out;
  for (const auto &[key, value] : doc.summary.items())
  {
    out << key << ": " << value.dump() << '\n';
  }
  char line[160];
  if (!doc.conditions.empty())
  {
    std::snprintf(line, sizeof line, "%-10s %5s %6s %12s %12s %12s  %s\n", "condition",
                  "mode", "index", "sample", "rel_err", "abs_err", "status");
    out << line;
  }
  for (const auto &r : doc.conditions)
  {
    const std::string index = r.index >= 0 ? std::to_string(r.index) : "-";
    const std::string sample = r.sample ? Printf("%.6g", *r.sample) : "-";
    std::snprintf(line, sizeof line, "%-10s %5d %6s %12s %12s %12s  %s\n", condition_name(r.id),
                  r.mode, index.c_str(), sample.c_str(), format_sci(r.rel_err).c_str(),
                  format_sci(r.abs_err).c_str(), Status(r).c_str());
    out << line;
  }
  if (!doc.conditions.empty())
  {
    out << "max rel_err " << format_sci(max_rel_err(doc.conditions)) << '\n';
  }
  for (const auto &[name, check] : doc.cross_checks)
  {
    out << "cross check " << name << ": max rel diff " << format_sci(check.max_rel_diff())
        << '\n';
  }
  for (const auto &l : doc.legend)
  {
    out << "legend: " << l << '\n';
  }
  for (const auto &w : doc.warnings)
  {
    out << "warning: " << w << '\n';
  }
  return out.str();
}

}  // namespace

ReportFormat parse_format(std::string_view name)
{
  if (name == "json")
  {
    return ReportFormat::Json;
  }
  if (name == "csv")
  {
    return ReportFormat::Csv;
  }
  if (name == "table")
  {
    return ReportFormat::Table;
  }
  throw UsageError("unknown format \"" + std::string(name) + "\" (json, csv, table)");
}

std::string format_sci(double v) { return Printf("%.4e", v); }

Json to_json(const ConditionReport &r)
{
  Json j = {{"id", condition_name(r.id)},
            {"mode", r.mode},
            {"index", r.index},
            {"lhs", matrix_to_json(r.lhs)},
            {"rhs", matrix_to_json(r.rhs)},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
            {"degenerate", r.degenerate},
            {"skipped", r.skipped},
            {"certified", r.certified},
            {"note", r.note}};
  if (r.sample)
  {
    j["sample"] = *r.sample;
  }
  return j;
}

Json to_json(const CrossCheck &check)
{
  Json entries = Json::array();
  for (const auto &e : check.entries)
  {
    entries.push_back({{"quantity", e.quantity},
                       {"mode", e.mode},
                       {"lhs_rel_diff", e.lhs_rel_diff},
                       {"rhs_rel_diff", e.rhs_rel_diff}});
  }
  return {{"max_rel_diff", check.max_rel_diff()}, {"entries", std::move(entries)}};
}

Json to_json(const OptimizationResult &result)
{
  Json x = Json::array();
  for (Eigen::Index k = 0; k < result.x.size(); k++)
  {
    x.push_back(result.x(k));
  }
  return {{"converged", result.converged},
          {"iterations", result.iterations},
          {"grad_inf_norm", result.grad_inf_norm},
          {"message", result.message},
          {"objective_history", result.objective_history},
          {"x", std::move(x)},
          {"rom", to_json(result.rom)}};
}

std::string render_report(const ReportDocument &doc, ReportFormat format)
{
  if (format == ReportFormat::Csv)
  {
    return RenderCsv(doc);
  }
  if (format == ReportFormat::Table)
  {
    return RenderTable(doc);
  }
  Json conditions = Json::array();
  for (const auto &r : doc.conditions)
  {
    conditions.push_back(to_json(r));
  }
  Json j = {{"schema", kSchemaVersion}, {"conditions", std::move(conditions)}};
  if (!doc.command.empty())
  {
    j["command"] = doc.command;
  }
  if (!doc.summary.empty())
  {
    j["summary"] = doc.summary;
  }
  if (!doc.cross_checks.empty())
  {
    Json cc = Json::object();
    for (const auto &[name, check] : doc.cross_checks)
    {
      cc[name] = to_json(check);
    }
    j["cross_check"] = std::move(cc);
  }
  if (!doc.legend.empty())
  {
    j["legend"] = doc.legend;
  }
  if (!doc.warnings.empty())
  {
    j["warnings"] = doc.warnings;
  }
  if (doc.result)
  {
    j["optimization"] = to_json(*doc.result);
  }
  return j.dump(2) + "\n";
}

void emit_report(const ReportDocument &doc, ReportFormat format, const std::string &path)
{
  write_text_file(path, render_report(doc, format));
}

}  // namespace parrom
