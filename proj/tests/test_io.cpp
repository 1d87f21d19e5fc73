// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include "parrom/cli/benchmarks.hpp"
#include "parrom/conditions/dyn_form.hpp"
#include "parrom/io/json_io.hpp"
#include "parrom/io/report_io.hpp"
#include "support.hpp"

using namespace parrom;
using namespace parrom::test;

namespace
{

ReportDocument SampleDocument()
{
  const BenchmarkSpec spec = make_benchmark("synth6");
  const auto fom = state_space_to_pole_residue(spec.fom, spec.domain);
  const auto rom = truncation_init(spec);
  ReportDocument doc;
  doc.command = "check";
  doc.conditions = check_thm5(fom, rom, spec.domain.lo[0], spec.domain.hi[0]);
  doc.legend = {"first line", "second, with a comma"};
  doc.warnings = {"a warning"};
  doc.summary["value"] = 0.1;
  return doc;
}

std::filesystem::path TempPath(const std::string &name)
{
  return std::filesystem::temp_directory_path() / ("parrom_test_io_" + name);
}

}  // namespace

TEST_CASE("model documents round trip")
{
  Rng rng(51);
  const BenchmarkSpec spec = make_benchmark("penzl12");
  const Json ss = to_json(spec.fom);
  CHECK(ss["schema"] == kSchemaVersion);
  CHECK(to_json(state_space_from_json(ss)).dump() == ss.dump());

  const auto model = state_space_to_pole_residue(RandomDynSystem(rng, 2, 1, 2, 3, 2), UnitBox(2));
  const Json pr = to_json(model);
  CHECK(is_pole_residue_json(pr));
  CHECK_FALSE(is_pole_residue_json(ss));
  const auto back = pole_residue_from_json(pr);
  CHECK(to_json(back).dump() == pr.dump());
  const ParamPoint q = {0.3, 0.8};
  const Complex s(0.2, 1.5);
  CHECK(eval_transfer(back, s, q) == eval_transfer(model, s, q));

  // A state-space document is converted to modal form.
  const auto converted = model_from_json(ss);
  CHECK(converted.order() == 12);
}

TEST_CASE("complex and matrix encodings")
{
  CHECK(complex_from_json(Json::parse("[1.5, -2]")) == Complex(1.5, -2.0));
  CHECK(complex_from_json(Json::parse("3")) == Complex(3.0, 0.0));
  CHECK_THROWS_AS(complex_from_json(Json::parse("\"x\"")), IoError);
  CHECK_THROWS_AS(complex_from_json(Json::parse("[1, 2, 3]")), IoError);
  CMatrix m(2, 2);
  m << Complex(1, 2), 3.0, Complex(0, -1), 0.1;
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), IoError);
  CHECK_THROWS_AS(pole_residue_from_json(Json::parse("{\"schema\": 1}")), IoError);
  CHECK_THROWS_AS(pole_residue_from_json(Json::parse("{\"schema\": 7, \"np\": 1}")), IoError);
}

TEST_CASE("json report is canonical")
{
  const ReportDocument doc = SampleDocument();
  const std::string text = render_report(doc, ReportFormat::Json);
  const Json j = Json::parse(text);
  CHECK(j.dump(2) + "\n" == text);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "check");
  CHECK(j["conditions"].size() == doc.conditions.size());
  CHECK(j["conditions"][0]["rel_err"].get<double>() == doc.conditions[0].rel_err);
  CHECK(render_report(doc, ReportFormat::Json) == text);

  const Json empty = Json::parse(render_report(ReportDocument{}, ReportFormat::Json));
  CHECK(empty["conditions"] == Json::array());
  CHECK(empty["schema"] == 1);
}

TEST_CASE("csv and table reports")
{
  const ReportDocument doc = SampleDocument();
  const std::string csv = render_report(doc, ReportFormat::Csv);
  CHECK(csv.rfind("id,mode,index,sample,abs_err,rel_err,", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) ==
        doc.conditions.size() + 1);

  const std::string table = render_report(doc, ReportFormat::Table);
  CHECK(table.find("max rel_err") != std::string::npos);
  CHECK(table.find("legend: second, with a comma") != std::string::npos);
  CHECK(table.find("warning: a warning") != std::string::npos);
  CHECK(table.find(format_sci(doc.conditions[0].rel_err)) != std::string::npos);

  CHECK(format_sci(8.496e-9) == "8.4960e-09");
  CHECK(format_sci(0.0) == "0.0000e+00");
}

TEST_CASE("format names and file errors")
{
  CHECK(parse_format("json") == ReportFormat::Json);
  CHECK(parse_format("csv") == ReportFormat::Csv);
  CHECK(parse_format("table") == ReportFormat::Table);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/parrom.json"), IoError);

  const auto bad = TempPath("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(read_json_file(bad.string()), IoError);

  const auto good = TempPath("good.json");
  write_text_file(good.string(), "{\"a\": [1, 2]}\n");
  CHECK(read_json_file(good.string())["a"][1] == 2);
  std::filesystem::remove(bad);
  std::filesystem::remove(good);
}
