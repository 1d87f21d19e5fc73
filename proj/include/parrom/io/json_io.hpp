// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_IO_JSON_IO_HPP
#define PARROM_IO_JSON_IO_HPP

#include <string>
#include <json.hpp>
#include "parrom/model/pole_residue.hpp"
#include "parrom/model/state_space.hpp"

namespace parrom
{

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

//
// Model files carry "schema": 1. A state-space file has the keys np, E, A, B, C, each a list
// of {"coeff_exponents": [[c, [e1, ...]], ...], "matrix": [[...], ...]}. A pole-residue
// file has np, ni, no, real_realizable and "modes": [{"lambda0", "lambda_lin", "b", "c"}]
// or "residue" in place of b and c for a full residue. Complex entries are [re, im]; a
// plain number is read as a real entry. Structural problems in the document raise IoError.
//
Json to_json(const ScalarParamFunction &f);
Json to_json(const ParametricStateSpace &sys);
Json to_json(const PoleResidueModel &model);

ScalarParamFunction param_function_from_json(const Json &j, int np);
ParametricStateSpace state_space_from_json(const Json &j);
PoleResidueModel pole_residue_from_json(const Json &j);

bool is_pole_residue_json(const Json &j);
// Either kind of model document; state-space models are converted to modal form.
PoleResidueModel model_from_json(const Json &j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);
Json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j);

// IoError when the file cannot be read or parsed.
Json read_json_file(const std::string &path);
// Writes text verbatim; "-" writes to stdout.
void write_text_file(const std::string &path, const std::string &text);

}  // namespace parrom

#endif  // PARROM_IO_JSON_IO_HPP
