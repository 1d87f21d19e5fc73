// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_NORMS_H2_HPP
#define PARROM_NORMS_H2_HPP

#include <vector>
#include "parrom/model/pole_residue.hpp"
#include "parrom/norms/parallel.hpp"
#include "parrom/norms/quadrature.hpp"
#include "parrom/types.hpp"

namespace parrom
{

//
// H2 inner product of two stable pole-residue systems at a fixed parameter,
//   <H1, H2> = sum_{i,j} trace(S_j^* R_i) / (-p_i - conj(r_j)),
// where H1 = sum R_i / (s - p_i) and H2 = sum S_j / (s - r_j). The H2 norm is
// (1/2pi) int ||H(iw)||_F^2 dw, so <H, H> is its square.
//
Complex h2_inner_pr(const ModelAtQ &m1, const ModelAtQ &m2);

// ||H - Hr||^2 from three inner products. Throws ConsistencyError if a self inner product
// has |Im| > 1e-10 (1 + |Re|).
double h2_error_sq_at_q(const ModelAtQ &fom, const ModelAtQ &rom);
// Same, but poles, residues and the double sums are formed in quad precision. Near an
// optimum the error is a small difference of large terms; in double its rounding noise
// would swamp the decreases a line search has to see.
double h2_error_sq_at_q(const PoleResidueModel &fom, const PoleResidueModel &rom,
                        ParamView q);

// H2 norm by adaptive Gauss-Kronrod on the frequency axis after w = tan(theta). tol is the
// relative error target; NonConvergence if it is not reached.
double h2_norm_freq_oracle(const ModelAtQ &model, double tol);
double h2_norm_freq_oracle(const PoleResidueModel &model, ParamView q, double tol);

struct NodeError
{
  ParamPoint q;
  double weight = 0.0;
  double h2_err_sq = 0.0;
};

struct ErrorBreakdown
{
  double total_sq = 0.0;
  // Rounding remainder of the quad-precision sum: total_sq + total_sq_lo carries about 30
  // significant digits.
  double total_sq_lo = 0.0;
  std::vector<NodeError> per_node;
};

// Squared H2 (x) L2 error over the box by tensor Gauss-Legendre quadrature. Both models
// must be stable over the domain (vertex check), else Instability.
ErrorBreakdown h2l2_error(const PoleResidueModel &fom, const PoleResidueModel &rom,
                          const ParameterDomain &dom,
                          Execution ex = Execution::Parallel);
// Same with a precomputed rule for dom.
ErrorBreakdown h2l2_error(const PoleResidueModel &fom, const PoleResidueModel &rom,
                          const ParameterDomain &dom, const TensorRule &rule,
                          Execution ex = Execution::Parallel);

}  // namespace parrom

#endif  // PARROM_NORMS_H2_HPP
