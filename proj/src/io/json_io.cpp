// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/io/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace parrom
{

namespace
{

[[noreturn]] void Fail(const std::string &what) { throw IoError("model json: " + what); }

const Json &Field(const Json &j, const char *key)
{
  if (!j.is_object() || !j.contains(key))
  {
    Fail(std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

int IntField(const Json &j, const char *key)
{
  const Json &v = Field(j, key);
  if (!v.is_number_integer())
  {
    Fail(std::string("\"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

void CheckSchema(const Json &j)
{
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
  {
    Fail("unsupported schema " + j.at("schema").dump());
  }
}

Json VectorToJson(const CVector &v)
{
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); i++)
  {
    out.push_back(complex_to_json(v(i)));
  }
  return out;
}

CVector VectorFromJson(const Json &j)
{
  if (!j.is_array())
  {
    Fail("vector must be an array");
  }
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); i++)
  {
    v(i) = complex_from_json(j[i]);
  }
  return v;
}

Json MatrixTermsToJson(const std::vector<MatrixTerm> &terms)
{
  Json out = Json::array();
  for (const auto &t : terms)
  {
    out.push_back({{"coeff_exponents", to_json(t.f)}, {"matrix", matrix_to_json(t.matrix)}});
  }
  return out;
}

std::vector<MatrixTerm> MatrixTermsFromJson(const Json &j, int np)
{
  if (!j.is_array())
  {
    Fail("term list must be an array");
  }
  std::vector<MatrixTerm> terms;
  for (const auto &t : j)
  {
    terms.push_back({param_function_from_json(Field(t, "coeff_exponents"), np),
                     matrix_from_json(Field(t, "matrix"))});
  }
  return terms;
}

Json VectorTermsToJson(const std::vector<VectorTerm> &terms)
{
  Json out = Json::array();
  for (const auto &t : terms)
  {
    out.push_back({{"coeff_exponents", to_json(t.f)}, {"vector", VectorToJson(t.vector)}});
  }
  return out;
}

std::vector<VectorTerm> VectorTermsFromJson(const Json &j, int np)
{
  if (!j.is_array())
  {
    Fail("term list must be an array");
  }
  std::vector<VectorTerm> terms;
  for (const auto &t : j)
  {
    terms.push_back({param_function_from_json(Field(t, "coeff_exponents"), np),
                     VectorFromJson(Field(t, "vector"))});
  }
  return terms;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json &j)
{
  if (j.is_number())
  {
    return {j.get<double>(), 0.0};
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
  {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  Fail("complex entry must be a number or [re, im], got " + j.dump());
}

Json matrix_to_json(const CMatrix &m)
{
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); r++)
  {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); c++)
    {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json &j)
{
  if (!j.is_array() || j.empty() || !j[0].is_array())
  {
    Fail("matrix must be a nonempty array of rows");
  }
  const std::size_t cols = j[0].size();
  CMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); r++)
  {
    if (!j[r].is_array() || j[r].size() != cols)
    {
      Fail("matrix rows must have equal length");
    }
    for (std::size_t c = 0; c < cols; c++)
    {
      m(r, c) = complex_from_json(j[r][c]);
    }
  }
  return m;
}

Json to_json(const ScalarParamFunction &f)
{
  Json out = Json::array();
  for (const auto &m : f.terms())
  {
    out.push_back(Json::array({m.coeff, m.exponents}));
  }
  return out;
}

ScalarParamFunction param_function_from_json(const Json &j, int np)
{
  if (!j.is_array())
  {
    Fail("coeff_exponents must be an array of [c, [e1, ...]]");
  }
  std::vector<Monomial> terms;
  for (const auto &t : j)
  {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_array())
    {
      Fail("monomial must be [c, [e1, ...]], got " + t.dump());
    }
    Monomial m;
    m.coeff = t[0].get<double>();
    for (const auto &e : t[1])
    {
      if (!e.is_number_integer())
      {
        Fail("exponents must be integers");
      }
      m.exponents.push_back(e.get<int>());
    }
    terms.push_back(std::move(m));
  }
  return ScalarParamFunction(np, std::move(terms));
}

Json to_json(const ParametricStateSpace &sys)
{
  return {{"schema", kSchemaVersion},
          {"np", sys.np()},
          {"E", MatrixTermsToJson(sys.E_terms())},
          {"A", MatrixTermsToJson(sys.A_terms())},
          {"B", MatrixTermsToJson(sys.B_terms())},
          {"C", MatrixTermsToJson(sys.C_terms())}};
}

ParametricStateSpace state_space_from_json(const Json &j)
{
  CheckSchema(j);
  const int np = IntField(j, "np");
  std::vector<MatrixTerm> e;
  if (j.contains("E"))
  {
    e = MatrixTermsFromJson(j.at("E"), np);
  }
  return ParametricStateSpace(np, std::move(e), MatrixTermsFromJson(Field(j, "A"), np),
                              MatrixTermsFromJson(Field(j, "B"), np),
                              MatrixTermsFromJson(Field(j, "C"), np));
}

Json to_json(const PoleResidueModel &model)
{
  Json modes = Json::array();
  for (const auto &mode : model.modes())
  {
    Json m = {{"lambda0", complex_to_json(mode.lambda0)},
              {"lambda_lin", VectorToJson(mode.lambda_lin)}};
    if (mode.is_rank_one())
    {
      m["b"] = VectorTermsToJson(mode.rank_one().b_terms);
      m["c"] = VectorTermsToJson(mode.rank_one().c_terms);
    }
    else
    {
      m["residue"] = MatrixTermsToJson(std::get<FullResidue>(mode.residue).terms);
    }
    modes.push_back(std::move(m));
  }
  return {{"schema", kSchemaVersion},
          {"np", model.np()},
          {"ni", model.ni()},
          {"no", model.no()},
          {"real_realizable", model.real_realizable()},
          {"modes", std::move(modes)}};
}

PoleResidueModel pole_residue_from_json(const Json &j)
{
  CheckSchema(j);
  const int np = IntField(j, "np");
  const Json &modes_json = Field(j, "modes");
  if (!modes_json.is_array())
  {
    Fail("\"modes\" must be an array");
  }
  std::vector<PoleResidueMode> modes;
  for (const auto &m : modes_json)
  {
    PoleResidueMode mode;
    mode.lambda0 = complex_from_json(Field(m, "lambda0"));
    mode.lambda_lin = VectorFromJson(Field(m, "lambda_lin"));
    if (m.contains("residue"))
    {
      mode.residue = FullResidue{MatrixTermsFromJson(m.at("residue"), np)};
    }
    else
    {
      mode.residue = RankOneResidue{VectorTermsFromJson(Field(m, "b"), np),
                                    VectorTermsFromJson(Field(m, "c"), np)};
    }
    modes.push_back(std::move(mode));
  }
  const bool real = j.value("real_realizable", false);
  return PoleResidueModel(np, IntField(j, "ni"), IntField(j, "no"), std::move(modes), real);
}

bool is_pole_residue_json(const Json &j) { return j.is_object() && j.contains("modes"); }

PoleResidueModel model_from_json(const Json &j)
{
  return is_pole_residue_json(j) ? pole_residue_from_json(j)
                                 : state_space_to_pole_residue(state_space_from_json(j));
}

Json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open " + path);
  }
  try
  {
    return Json::parse(in);
  }
  catch (const Json::exception &e)
  {
    throw IoError(path + ": " + e.what());
  }
}

void write_text_file(const std::string &path, const std::string &text)
{
  if (path == "-")
  {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw IoError("cannot write " + path);
  }
  out << text;
  if (!out)
  {
    throw IoError("write failed for " + path);
  }
}

}  // namespace parrom
