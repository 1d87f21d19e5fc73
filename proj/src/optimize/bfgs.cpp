// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/optimize/bfgs.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace parrom
{

namespace
{

constexpr int kMaxBacktracks = 80;
// Relative size of an objective change treated as rounding noise.
constexpr double kNoiseBand = 1e-10;
constexpr double kCurvature = 0.9;
// Directions closer than this (in cosine) to orthogonal with the gradient are discarded.
constexpr double kMinCosine = 1e-10;

}  // namespace

BfgsResult bfgs_minimize(const std::function<double(const RVector &)> &f,
                         const std::function<RVector(const RVector &)> &grad, const RVector &x0,
                         const OptimizerConfig &cfg, const IterationCallback &callback)
{
  return bfgs_minimize([&](const RVector &x) { return ExtendedValue{f(x), 0.0}; }, grad, x0,
                       cfg, callback);
}

BfgsResult bfgs_minimize(const std::function<ExtendedValue(const RVector &)> &f,
                         const std::function<RVector(const RVector &)> &grad, const RVector &x0,
                         const OptimizerConfig &cfg, const IterationCallback &callback)
{
  cfg.validate();
  const Eigen::Index n = x0.size();
  BfgsResult res;
  res.x = x0;
  ExtendedValue fx = f(x0);
  if (!std::isfinite(fx.hi))
  {
    res.message = "objective is not finite at the starting point";
    return res;
  }
  RVector g = grad(res.x);
  RMatrix Hinv = RMatrix::Identity(n, n);
  bool scaled = false;

  auto record = [&](double step)
  {
    res.grad_inf_norm = g.lpNorm<Eigen::Infinity>();
    res.objective_history.push_back(fx.hi);
    res.log.push_back({res.iterations, fx.hi, res.grad_inf_norm, step});
    if (callback)
    {
      callback(res.log.back(), res.x);
    }
  };
  record(0.0);

  while (true)
  {
    if (res.grad_inf_norm <= cfg.grad_tol)
    {
      res.converged = true;
      res.message = "gradient tolerance reached";
      break;
    }
    if (res.iterations >= cfg.max_iter)
    {
      res.message = "iteration limit reached";
      break;
    }

    // Try the quasi-Newton direction first; fall back to steepest descent once.
    bool accepted = false, have_trial_grad = false;
    RVector g_trial;
    double alpha = 1.0;
    ExtendedValue f_new = fx;
    RVector x_new;
    for (int attempt = 0; attempt < 2 && !accepted; attempt++)
    {
      if (attempt == 1)
      {
        if (Hinv.isIdentity(0.0))
        {
          break;
        }
        Hinv.setIdentity();
        scaled = false;
      }
      RVector d = -Hinv * g;
      double slope = g.dot(d);
      if (!(slope < -kMinCosine * g.norm() * d.norm()))
      {
        Hinv.setIdentity();
        scaled = false;
        d = -g;
        slope = g.dot(d);
      }
      alpha = 1.0;
      for (int k = 0; k < kMaxBacktracks; k++)
      {
        x_new = res.x + alpha * d;
        f_new = f(x_new);
        const double decrease = std::isfinite(f_new.hi) ? fx - f_new : -1.0;
        // Only strict decreases are accepted, so that no step is taken on rounding alone.
        if (!(decrease > 0.0))
        {
          alpha *= cfg.shrink;
          continue;
        }
        if (decrease >= -cfg.armijo_c * alpha * slope)
        {
          accepted = true;
          break;
        }
        // Near a minimum the predicted decrease drops below the rounding level of f. There
        // the derivative form of the Armijo test decides instead:
        //   kCurvature * slope <= grad(x_new)^T d <= (1 - 2 armijo_c) |slope|.
        if (decrease <= kNoiseBand * std::abs(fx.hi))
        {
          g_trial = grad(x_new);
          const double dslope = g_trial.dot(d);
          if (dslope >= kCurvature * slope && dslope <= (2.0 * cfg.armijo_c - 1.0) * slope)
          {
            accepted = have_trial_grad = true;
            break;
          }
        }
        alpha *= cfg.shrink;
      }
    }
    if (!accepted)
    {
      res.message = "line search failed to find a decrease";
      break;
    }

    const RVector g_new = have_trial_grad ? g_trial : grad(x_new);
    const RVector s = x_new - res.x;
    const RVector y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm())
    {
      if (!scaled)
      {
        Hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const RVector Hy = Hinv * y;
      const double yHy = y.dot(Hy);
      Hinv += ((sy + yHy) * rho * rho) * (s * s.transpose()) -
              rho * (Hy * s.transpose() + s * Hy.transpose());
    }
    res.x = x_new;
    fx = f_new;
    g = g_new;
    res.iterations++;
    record(alpha);
  }
  return res;
}

OptimizationResult bfgs_minimize(const ErrorObjective &obj, const RVector &x0,
                                 const OptimizerConfig &cfg, const IterationCallback &callback)
{
  const auto r = bfgs_minimize([&](const RVector &x) { return obj.value_extended(x); },
                               [&](const RVector &x) { return obj.gradient(x); }, x0, cfg,
                               callback);
  OptimizationResult out;
  out.rom = obj.unpack(r.x);
  out.x = r.x;
  out.objective_history = r.objective_history;
  out.log = r.log;
  out.grad_inf_norm = r.grad_inf_norm;
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.message = r.message;
  return out;
}

RVector random_start(const ErrorObjective &obj, const RVector &x_ref, std::uint64_t seed,
                     double scale)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RVector u(x_ref.size());
  for (Eigen::Index k = 0; k < u.size(); k++)
  {
    u(k) = unit(rng);
  }
  for (int k = 0; k < 60; k++)
  {
    const RVector x = x_ref.array() * (1.0 + scale * u.array());
    if (obj.is_stable(x))
    {
      return x;
    }
    scale *= 0.5;
  }
  return x_ref;
}

}  // namespace parrom
