// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/model/param_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parrom
{

ScalarParamFunction::ScalarParamFunction(int np, std::vector<Monomial> terms) : np_(np)
{
  if (np < 1)
  {
    throw StructureError("ScalarParamFunction: parameter dimension must be >= 1");
  }
  for (const auto &t : terms)
  {
    if (static_cast<int>(t.exponents.size()) != np)
    {
      throw StructureError("ScalarParamFunction: exponent vector length differs from np");
    }
    if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e < 0; }))
    {
      throw StructureError("ScalarParamFunction: negative exponent");
    }
    if (!std::isfinite(t.coeff))
    {
      throw StructureError("ScalarParamFunction: non-finite coefficient");
    }
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Monomial &a, const Monomial &b)
                   { return a.exponents < b.exponents; });
  for (auto &t : terms)
  {
    if (!terms_.empty() && terms_.back().exponents == t.exponents)
    {
      terms_.back().coeff += t.coeff;
    }
    else
    {
      terms_.push_back(std::move(t));
    }
  }
}

ScalarParamFunction ScalarParamFunction::constant(int np, double value)
{
  return ScalarParamFunction(np, {Monomial{value, std::vector<int>(np, 0)}});
}

ScalarParamFunction ScalarParamFunction::coordinate(int np, int k)
{
  if (k < 0 || k >= np)
  {
    throw StructureError("ScalarParamFunction: coordinate index out of range");
  }
  std::vector<int> e(np, 0);
  e[k] = 1;
  return ScalarParamFunction(np, {Monomial{1.0, e}});
}

double ScalarParamFunction::operator()(ParamView q) const
{
  if (static_cast<int>(q.size()) != np_)
  {
    throw StructureError("ScalarParamFunction: parameter point has wrong dimension");
  }
  double sum = 0.0;
  for (const auto &t : terms_)
  {
    double v = t.coeff;
    for (int k = 0; k < np_; k++)
    {
      for (int e = 0; e < t.exponents[k]; e++)
      {
        v *= q[k];
      }
    }
    sum += v;
  }
  return sum;
}

int ScalarParamFunction::max_degree() const
{
  int deg = -1;
  for (const auto &t : terms_)
  {
    deg = std::max(deg, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
  }
  return deg;
}

void ScalarParamFunction::affine_coefficients(double &c0, std::vector<double> &lin) const
{
  if (!is_affine())
  {
    throw StructureError("ScalarParamFunction: function is not affine in the parameters");
  }
  c0 = 0.0;
  lin.assign(np_, 0.0);
  for (const auto &t : terms_)
  {
    auto k = std::find(t.exponents.begin(), t.exponents.end(), 1);
    if (k == t.exponents.end())
    {
      c0 += t.coeff;
    }
    else
    {
      lin[k - t.exponents.begin()] += t.coeff;
    }
  }
}

ScalarParamFunction ScalarParamFunction::operator*(const ScalarParamFunction &other) const
{
  if (np_ != other.np_)
  {
    throw StructureError("ScalarParamFunction: product of functions with different np");
  }
  std::vector<Monomial> prod;
  for (const auto &a : terms_)
  {
    for (const auto &b : other.terms_)
    {
      Monomial m{a.coeff * b.coeff, a.exponents};
      for (int k = 0; k < np_; k++)
      {
        m.exponents[k] += b.exponents[k];
      }
      prod.push_back(std::move(m));
    }
  }
  return ScalarParamFunction(np_, std::move(prod));
}

}  // namespace parrom
