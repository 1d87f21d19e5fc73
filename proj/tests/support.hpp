// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures for the test executables: seeded random models and dense oracles.

#ifndef PARROM_TESTS_SUPPORT_HPP
#define PARROM_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>
#include "parrom/cli/benchmarks.hpp"
#include "parrom/model/pole_residue.hpp"
#include "parrom/model/state_space.hpp"
#include "parrom/optimize/bfgs.hpp"
#include "parrom/optimize/layout.hpp"
#include "parrom/optimize/problem.hpp"

namespace parrom::test
{

using Rng = std::mt19937_64;

inline double Uniform(Rng &rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double LogUniform(Rng &rng, double lo, double hi)
{
  return std::exp(Uniform(rng, std::log(lo), std::log(hi)));
}

inline CMatrix RandomReal(Rng &rng, int rows, int cols)
{
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; i++)
  {
    for (int j = 0; j < cols; j++)
    {
      m(i, j) = Uniform(rng, -1.0, 1.0);
    }
  }
  return m;
}

inline CMatrix RandomComplex(Rng &rng, int rows, int cols)
{
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; i++)
  {
    for (int j = 0; j < cols; j++)
    {
      m(i, j) = Complex(Uniform(rng, -1.0, 1.0), Uniform(rng, -1.0, 1.0));
    }
  }
  return m;
}

inline double RelDiff(const CMatrix &x, const CMatrix &y)
{
  return (x - y).norm() / std::max(x.norm(), 1e-300);
}

inline double RelDiff(Complex x, Complex y) { return std::abs(x - y) / std::max(std::abs(x), 1e-300); }

// Block-diagonal state matrix terms: n_pairs rotation blocks followed by n_real scalars.
// A(q) = A0 + sum_k q_k A_k stays stable on [0, 1]^np because every linear real part is
// bounded by a fraction of the constant one.
struct BlockDynamics
{
  CMatrix a0;
  std::vector<CMatrix> lin;
};

inline BlockDynamics RandomBlockDynamics(Rng &rng, int n_pairs, int n_real, int np,
                                         bool parametric = true)
{
  const int n = 2 * n_pairs + n_real;
  BlockDynamics d{CMatrix::Zero(n, n), std::vector<CMatrix>(np, CMatrix::Zero(n, n))};
  for (int k = 0; k < n_pairs; k++)
  {
    const int r = 2 * k;
    const double sigma = -LogUniform(rng, 0.1, 5.0), omega = Uniform(rng, 0.5, 8.0);
    d.a0(r, r) = d.a0(r + 1, r + 1) = sigma;
    d.a0(r, r + 1) = omega;
    d.a0(r + 1, r) = -omega;
    for (int j = 0; j < np && parametric; j++)
    {
      const double ds = Uniform(rng, -0.4, 0.4) * std::abs(sigma) / np;
      const double dw = Uniform(rng, -2.0, 2.0);
      d.lin[j](r, r) = d.lin[j](r + 1, r + 1) = ds;
      d.lin[j](r, r + 1) = dw;
      d.lin[j](r + 1, r) = -dw;
    }
  }
  for (int k = 0; k < n_real; k++)
  {
    const int r = 2 * n_pairs + k;
    const double sigma = -LogUniform(rng, 0.1, 5.0);
    d.a0(r, r) = sigma;
    for (int j = 0; j < np && parametric; j++)
    {
      d.lin[j](r, r) = Uniform(rng, -0.4, 0.4) * std::abs(sigma) / np;
    }
  }
  return d;
}

inline std::vector<MatrixTerm> DynamicsTerms(const BlockDynamics &d)
{
  const int np = static_cast<int>(d.lin.size());
  std::vector<MatrixTerm> terms = {{ScalarParamFunction::constant(np), d.a0}};
  for (int k = 0; k < np; k++)
  {
    if (d.lin[k].norm() > 0.0)
    {
      terms.push_back({ScalarParamFunction::coordinate(np, k), d.lin[k]});
    }
  }
  return terms;
}

// Affine-dynamics system on np parameters with constant B and C.
inline ParametricStateSpace RandomDynSystem(Rng &rng, int n_pairs, int n_real, int ni, int no,
                                            int np = 1)
{
  const BlockDynamics d = RandomBlockDynamics(rng, n_pairs, n_real, np);
  const int n = 2 * n_pairs + n_real;
  const auto one = ScalarParamFunction::constant(np);
  return ParametricStateSpace(np, {}, DynamicsTerms(d), {{one, RandomReal(rng, n, ni)}},
                              {{one, RandomReal(rng, no, n)}});
}

// Input/output-parameter form on [0, 1]^2: constant A, B(q) = B1 + q1 B2, C(q) = C1 + q2 C2.
inline ParametricStateSpace RandomIoSystem(Rng &rng, int n_pairs, int n_real, int ni, int no)
{
  const BlockDynamics d = RandomBlockDynamics(rng, n_pairs, n_real, 2, false);
  const int n = 2 * n_pairs + n_real;
  const auto one = ScalarParamFunction::constant(2);
  const auto q1 = ScalarParamFunction::coordinate(2, 0);
  const auto q2 = ScalarParamFunction::coordinate(2, 1);
  return ParametricStateSpace(
      2, {}, {{one, d.a0}}, {{one, RandomReal(rng, n, ni)}, {q1, RandomReal(rng, n, ni)}},
      {{one, RandomReal(rng, no, n)}, {q2, RandomReal(rng, no, n)}});
}

inline ParameterDomain UnitBox(int np, int order = 64)
{
  return ParameterDomain(std::vector<double>(np, 0.0), std::vector<double>(np, 1.0), order);
}

// Frozen model with independent complex poles and rank-one residues, not real-realizable.
inline ModelAtQ RandomFrozen(Rng &rng, int order, int ni, int no, double re_lo, double re_hi)
{
  ModelAtQ m;
  m.ni = ni;
  m.no = no;
  for (int l = 0; l < order; l++)
  {
    const double re = -LogUniform(rng, re_lo, re_hi);
    const double im = Uniform(rng, -1.0, 1.0) * LogUniform(rng, 1e-2, 1e3);
    m.poles.push_back(Complex(re, im));
    m.residues.push_back(RandomComplex(rng, no, 1) * RandomComplex(rng, ni, 1).adjoint());
  }
  return m;
}

// Difference model m1 - m2 as one pole-residue list.
inline ModelAtQ Difference(const ModelAtQ &m1, const ModelAtQ &m2)
{
  ModelAtQ d = m1;
  for (std::size_t l = 0; l < m2.poles.size(); l++)
  {
    d.poles.push_back(m2.poles[l]);
    d.residues.push_back(-m2.residues[l]);
  }
  return d;
}

// Copy of a rank-one model with every b term scaled by t and every c term by 1 / t.
inline PoleResidueModel GaugeScaled(const PoleResidueModel &m, double t)
{
  std::vector<PoleResidueMode> modes = m.modes();
  for (auto &mode : modes)
  {
    auto &r = std::get<RankOneResidue>(mode.residue);
    for (auto &term : r.b_terms)
    {
      term.vector *= t;
    }
    for (auto &term : r.c_terms)
    {
      term.vector /= t;
    }
  }
  return PoleResidueModel(m.np(), m.ni(), m.no(), std::move(modes), m.real_realizable());
}

// The SISO io-form reduction used by the line-condition checks: order-6 FOM, order-2 ROM
// from truncation, constant poles free, the B1 term frozen, B2, C1 and C2 free.
struct IoReduction
{
  PoleResidueModel fom, init;
  DecisionLayout layout;
  ParameterDomain domain;
};

inline IoReduction MakeIoReduction(std::uint64_t seed, int quad_order = 16)
{
  Rng rng(seed);
  const ParametricStateSpace sys = RandomIoSystem(rng, 2, 2, 1, 1);
  IoReduction red;
  red.domain = UnitBox(2, quad_order);
  red.fom = state_space_to_pole_residue(sys, red.domain);
  red.init = state_space_to_pole_residue(sys.truncate(2), red.domain);
  red.layout = make_layout(red.init, true, true, true);
  for (auto &blk : red.layout.blocks)
  {
    // Coordinates per block: constant part, then one linear part per parameter.
    const int per = 1 + red.layout.np;
    for (int part = 0; part < blk.states(); part++)
    {
      for (int k = 1; k < per; k++)
      {
        blk.free[part * per + k] = false;
      }
    }
  }
  red.layout.b_free[0].setConstant(false);
  red.layout.validate();
  return red;
}

inline OptimizationResult OptimizeIo(const IoReduction &red)
{
  const ErrorObjective obj(red.fom, red.layout, red.init, red.domain);
  OptimizerConfig cfg;
  cfg.quad_order = red.domain.quad_order[0];
  return bfgs_minimize(obj, obj.pack(red.init), cfg);
}

// Converged benchmark reduction with default settings.
inline OptimizationResult OptimizeBenchmark(const std::string &name)
{
  const BenchmarkSpec spec = make_benchmark(name);
  const PoleResidueModel fom = state_space_to_pole_residue(spec.fom, spec.domain);
  const PoleResidueModel init = truncation_init(spec);
  const ErrorObjective obj(fom, benchmark_layout(spec, init), init, spec.domain);
  return bfgs_minimize(obj, obj.pack(init), OptimizerConfig{});
}

}  // namespace parrom::test

#endif  // PARROM_TESTS_SUPPORT_HPP
