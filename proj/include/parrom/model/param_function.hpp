// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_MODEL_PARAM_FUNCTION_HPP
#define PARROM_MODEL_PARAM_FUNCTION_HPP

#include <vector>
#include "parrom/types.hpp"

namespace parrom
{

struct Monomial
{
  double coeff = 0.0;
  std::vector<int> exponents;  // one entry per parameter coordinate, all >= 0

  bool operator==(const Monomial &) const = default;
};

//
// Real scalar function of the parameter vector, written as a finite sum of monomials
// c * q_0^e_0 * ... * q_{np-1}^e_{np-1}. Terms are kept in canonical form: sorted by
// exponent vector with repeated exponents merged, so equal functions compare equal.
//
class ScalarParamFunction
{
public:
  ScalarParamFunction() = default;
  ScalarParamFunction(int np, std::vector<Monomial> terms);

  static ScalarParamFunction constant(int np, double value = 1.0);
  // The coordinate function q -> q_k.
  static ScalarParamFunction coordinate(int np, int k);

  int np() const { return np_; }
  const std::vector<Monomial> &terms() const { return terms_; }

  double operator()(ParamView q) const;

  int max_degree() const;
  bool is_constant() const { return max_degree() <= 0; }
  // Affine means every monomial has total degree <= 1.
  bool is_affine() const { return max_degree() <= 1; }
  // For an affine function returns c0 and the gradient so that f(q) = c0 + lin . q.
  void affine_coefficients(double &c0, std::vector<double> &lin) const;

  ScalarParamFunction operator*(const ScalarParamFunction &other) const;

  bool operator==(const ScalarParamFunction &) const = default;

private:
  int np_ = 0;
  std::vector<Monomial> terms_;
};

}  // namespace parrom

#endif  // PARROM_MODEL_PARAM_FUNCTION_HPP
