// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_OPTIMIZE_PROBLEM_HPP
#define PARROM_OPTIMIZE_PROBLEM_HPP

#include <functional>
#include "parrom/model/pole_residue.hpp"
#include "parrom/norms/parallel.hpp"
#include "parrom/norms/quadrature.hpp"
#include "parrom/optimize/layout.hpp"
#include "parrom/types.hpp"

namespace parrom
{

// Objective value as an unevaluated sum hi + lo. Decreases far below the rounding level of
// hi stay visible in the difference.
struct ExtendedValue
{
  double hi = 0.0, lo = 0.0;
};

inline double operator-(ExtendedValue a, ExtendedValue b)
{
  return (a.hi - b.hi) + (a.lo - b.lo);
}

struct OptimizerConfig
{
  double grad_tol = 1e-9;  // on the infinity norm of the gradient
  int max_iter = 10000;
  double fd_step = 1e-6;
  double armijo_c = 1e-4;
  double shrink = 0.5;
  int quad_order = 64;

  void validate() const;
};

//
// Squared H2 (x) L2 error between a fixed full-order model and the ROM described by a
// decision vector, together with its analytic gradient. The quadrature rule is built once.
//
class ErrorObjective
{
public:
  ErrorObjective(PoleResidueModel fom, DecisionLayout layout, const PoleResidueModel &tmpl,
                 ParameterDomain dom, Execution ex = Execution::Parallel);

  const PoleResidueModel &fom() const { return fom_; }
  const DecisionLayout &layout() const { return layout_; }
  const ParameterDomain &domain() const { return dom_; }
  const TensorRule &rule() const { return rule_; }
  Execution execution() const { return ex_; }
  int size() const { return static_cast<int>(free_index_.size()); }

  RVector pack(const PoleResidueModel &rom) const;
  PoleResidueModel unpack(const RVector &x) const;
  bool is_stable(const RVector &x) const;

  // +infinity when the ROM is unstable somewhere on the domain.
  double value(const RVector &x) const;
  // value(x) together with the remainder of its quad-precision sum.
  ExtendedValue value_extended(const RVector &x) const;
  // Throws Instability for an unstable ROM.
  RVector gradient(const RVector &x) const;
  // Gradient with respect to every layout coordinate, free or not.
  RVector coordinate_gradient(const RVector &x) const;

private:
  PoleResidueModel fom_;
  DecisionLayout layout_;
  ParameterDomain dom_;
  TensorRule rule_;
  Execution ex_;
  RVector base_coords_;
  std::vector<int> free_index_;
};

// Central differences with step h (1 + |x_k|): the fourth-order stencil where all four
// probes are finite, the two-point one where only the inner pair is, and one-sided
// differences next to an infeasible probe.
RVector grad_fd(const std::function<double(const RVector &)> &f, const RVector &x, double h);
RVector grad_fd(const ErrorObjective &obj, const RVector &x, double h);

}  // namespace parrom

#endif  // PARROM_OPTIMIZE_PROBLEM_HPP
