// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_OPTIMIZE_LAYOUT_HPP
#define PARROM_OPTIMIZE_LAYOUT_HPP

#include <vector>
#include "parrom/model/param_function.hpp"
#include "parrom/model/pole_residue.hpp"
#include "parrom/types.hpp"

namespace parrom
{

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

enum class BlockKind
{
  Real1x1,
  Conj2x2
};

//
// One diagonal block of the real ROM state matrix. A Real1x1 block has coordinates
// (lambda0, lambda_lin[0..np)); a Conj2x2 block [[sigma, omega], [-omega, sigma]] has
// (sigma0, sigma_lin[0..np), omega0, omega_lin[0..np)). free holds one flag per coordinate.
//
struct BlockSpec
{
  BlockKind kind = BlockKind::Real1x1;
  std::vector<bool> free;

  int states() const { return kind == BlockKind::Real1x1 ? 1 : 2; }
  int coords(int np) const { return states() * (1 + np); }
};

//
// Real parameterization of a real-realizable diagonal ROM
//   A(q) = blockdiag(blocks), B(q) = sum_t b_fns[t](q) B_t, C(q) = sum_t c_fns[t](q) C_t.
// The full coordinate vector lists the blocks in order, then every B_t row-major
// (n_states x ni), then every C_t row-major (no x n_states). The decision vector is the
// subsequence of free coordinates.
//
struct DecisionLayout
{
  int np = 0, ni = 0, no = 0;
  std::vector<BlockSpec> blocks;
  std::vector<ScalarParamFunction> b_fns, c_fns;
  std::vector<BoolMatrix> b_free;  // n_states x ni per B term
  std::vector<BoolMatrix> c_free;  // no x n_states per C term

  int n_states() const;
  int n_coords() const;
  int n_free() const;
  // Free flag of every coordinate, in coordinate order.
  std::vector<bool> free_mask() const;
  void validate() const;
};

// Layout matching a real-realizable model produced by state_space_to_pole_residue: real
// modes become Real1x1 blocks, adjacent conjugate pairs Conj2x2 blocks.
DecisionLayout make_layout(const PoleResidueModel &rom, bool dynamics_free, bool b_free,
                           bool c_free);

// All real coordinates of rom. StructureError if rom does not fit the layout.
RVector layout_coords(const PoleResidueModel &rom, const DecisionLayout &layout);
PoleResidueModel model_from_coords(const RVector &coords, const DecisionLayout &layout);

RVector pack(const PoleResidueModel &rom, const DecisionLayout &layout);
// Free coordinates from x, frozen ones from tmpl.
PoleResidueModel unpack(const RVector &x, const DecisionLayout &layout,
                        const PoleResidueModel &tmpl);

}  // namespace parrom

#endif  // PARROM_OPTIMIZE_LAYOUT_HPP
