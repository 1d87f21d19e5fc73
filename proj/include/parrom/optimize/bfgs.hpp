// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_OPTIMIZE_BFGS_HPP
#define PARROM_OPTIMIZE_BFGS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>
#include "parrom/optimize/problem.hpp"
#include "parrom/types.hpp"

namespace parrom
{

struct IterationRecord
{
  int iter = 0;
  double objective = 0.0;
  double grad_norm = 0.0;  // infinity norm
  double step = 0.0;       // accepted line-search step length, 0 for the start point
};

using IterationCallback = std::function<void(const IterationRecord &, const RVector &)>;

struct BfgsResult
{
  RVector x;
  std::vector<double> objective_history;
  std::vector<IterationRecord> log;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

//
// BFGS on the inverse Hessian with Armijo backtracking. A non-finite trial value counts as
// a failed Armijo test, so the search also backs away from infeasible points. The update is
// skipped unless s^T y > 1e-12 |s| |y|.
//
BfgsResult bfgs_minimize(const std::function<double(const RVector &)> &f,
                         const std::function<RVector(const RVector &)> &grad, const RVector &x0,
                         const OptimizerConfig &cfg, const IterationCallback &callback = {});
// Same with an extended-precision objective; every accepted step decreases hi + lo
// strictly, and objective_history records hi.
BfgsResult bfgs_minimize(const std::function<ExtendedValue(const RVector &)> &f,
                         const std::function<RVector(const RVector &)> &grad, const RVector &x0,
                         const OptimizerConfig &cfg, const IterationCallback &callback = {});

struct OptimizationResult
{
  PoleResidueModel rom;
  RVector x;
  std::vector<double> objective_history;
  std::vector<IterationRecord> log;
  double grad_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

OptimizationResult bfgs_minimize(const ErrorObjective &obj, const RVector &x0,
                                 const OptimizerConfig &cfg,
                                 const IterationCallback &callback = {});

// Seeded multiplicative perturbation of x_ref, shrunk until the ROM is stable.
RVector random_start(const ErrorObjective &obj, const RVector &x_ref, std::uint64_t seed,
                     double scale = 0.1);

}  // namespace parrom

#endif  // PARROM_OPTIMIZE_BFGS_HPP
