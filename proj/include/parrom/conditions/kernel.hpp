// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_CONDITIONS_KERNEL_HPP
#define PARROM_CONDITIONS_KERNEL_HPP

#include "parrom/types.hpp"

namespace parrom
{

// Arguments of the logarithmic kernel. Valid when Re(s_a - sigma_a) > 0 and
// Re(s_b - sigma_b) > 0.
struct LogKernelPoint
{
  Complex s_a, s_b;
  Complex sigma_a, sigma_b;
  double a = 0.0, b = 1.0;
};

//
// f(s_a, s_b) = (b - a) / D * Log(u_b / u_a),  u_x = s_x - sigma_x,  D = u_b - u_a,
// which is the integral over [a, b] of 1 / u(q) with u linear between u_a and u_b. For
// |D| <= 0.05 |u_a| the series of log(1 + rho) / rho in rho = D / u_a is used instead.
// BranchDomain if Re u_a <= 0 or Re u_b <= 0.
//
Complex f_kernel(const LogKernelPoint &pt);

struct KernelPartials
{
  Complex ds_a, ds_b;
};

KernelPartials f_kernel_partials(const LogKernelPoint &pt);

}  // namespace parrom

#endif  // PARROM_CONDITIONS_KERNEL_HPP
