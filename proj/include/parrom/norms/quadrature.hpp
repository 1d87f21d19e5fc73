// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_NORMS_QUADRATURE_HPP
#define PARROM_NORMS_QUADRATURE_HPP

#include <vector>
#include "parrom/model/pole_residue.hpp"
#include "parrom/types.hpp"

namespace parrom
{

// Nodes (strictly increasing, interior) and weights of a rule on [a, b].
struct QuadratureRule1D
{
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// m-point Gauss-Legendre rule on [a, b], exact for polynomials of degree <= 2m - 1.
QuadratureRule1D gauss_legendre(int m, double a, double b);

//
// Tensor-product rule over a box. Nodes are in lexicographic order with the last axis
// varying fastest; the weight of a node is the product of its axis weights.
//
struct TensorRule
{
  std::vector<ParamPoint> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

TensorRule tensor_gauss_legendre(const ParameterDomain &dom);

}  // namespace parrom

#endif  // PARROM_NORMS_QUADRATURE_HPP
