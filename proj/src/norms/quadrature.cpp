// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/norms/quadrature.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>

namespace parrom
{

QuadratureRule1D gauss_legendre(int m, double a, double b)
{
  if (m < 1)
  {
    throw StructureError("gauss_legendre: number of points must be >= 1");
  }
  if (!(a < b))
  {
    throw StructureError("gauss_legendre: need a < b");
  }
  // Boost returns the nonnegative zeros of P_m in increasing order (zero included for odd m).
  const std::vector<double> pos = boost::math::legendre_p_zeros<double>(m);
  std::vector<double> x;
  x.reserve(m);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it)
  {
    if (*it != 0.0)
    {
      x.push_back(-*it);
    }
  }
  x.insert(x.end(), pos.begin(), pos.end());

  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  QuadratureRule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 0; k < m; k++)
  {
    const double dp = boost::math::legendre_p_prime<double>(m, x[k]);
    rule.nodes[k] = mid + half * x[k];
    rule.weights[k] = half * 2.0 / ((1.0 - x[k] * x[k]) * dp * dp);
  }
  return rule;
}

TensorRule tensor_gauss_legendre(const ParameterDomain &dom)
{
  const int np = dom.np();
  std::vector<QuadratureRule1D> axes;
  std::size_t total = 1;
  for (int k = 0; k < np; k++)
  {
    axes.push_back(gauss_legendre(dom.quad_order[k], dom.lo[k], dom.hi[k]));
    total *= axes.back().size();
  }
  TensorRule rule;
  rule.nodes.reserve(total);
  rule.weights.reserve(total);
  std::vector<std::size_t> idx(np, 0);
  for (std::size_t n = 0; n < total; n++)
  {
    ParamPoint q(np);
    double w = 1.0;
    for (int k = 0; k < np; k++)
    {
      q[k] = axes[k].nodes[idx[k]];
      w *= axes[k].weights[idx[k]];
    }
    rule.nodes.push_back(std::move(q));
    rule.weights.push_back(w);
    for (int k = np - 1; k >= 0; k--)
    {
      if (++idx[k] < axes[k].size())
      {
        break;
      }
      idx[k] = 0;
    }
  }
  return rule;
}

}  // namespace parrom
