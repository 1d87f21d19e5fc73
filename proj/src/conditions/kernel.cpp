// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/conditions/kernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace parrom
{

namespace
{

constexpr double kSeriesRadius = 0.05;
constexpr int kMaxSeriesTerms = 64;

struct Shifted
{
  Complex u_a, u_b, d;
};

Shifted Shift(const LogKernelPoint &pt)
{
  const Complex u_a = pt.s_a - pt.sigma_a, u_b = pt.s_b - pt.sigma_b;
  if (!(u_a.real() > 0.0) || !(u_b.real() > 0.0))
  {
    std::ostringstream msg;
    msg << "f_kernel: s - sigma must lie in the open right half-plane (got " << u_a << ", "
        << u_b << ")";
    throw BranchDomain(msg.str());
  }
  return {u_a, u_b, u_b - u_a};
}

// sum_k (-rho)^k w(k), stopped once a term no longer changes the sum.
template <typename Weight>
Complex Series(Complex rho, Weight w)
{
  const double eps = std::numeric_limits<double>::epsilon();
  Complex sum = 0.0, power = 1.0;
  for (int k = 0; k < kMaxSeriesTerms; k++)
  {
    const Complex term = power * w(k);
    sum += term;
    if (std::abs(term) <= 0.25 * eps * std::abs(sum))
    {
      break;
    }
    power *= -rho;
  }
  return sum;
}

}  // namespace

Complex f_kernel(const LogKernelPoint &pt)
{
  const auto [u_a, u_b, d] = Shift(pt);
  const double width = pt.b - pt.a;
  const Complex rho = d / u_a;
  if (std::abs(rho) <= kSeriesRadius)
  {
    return width / u_a * Series(rho, [](int k) { return 1.0 / (k + 1); });
  }
  return width / d * std::log(u_b / u_a);
}

KernelPartials f_kernel_partials(const LogKernelPoint &pt)
{
  const auto [u_a, u_b, d] = Shift(pt);
  const double width = pt.b - pt.a;
  const Complex rho = d / u_a;
  if (std::abs(rho) <= kSeriesRadius)
  {
    const Complex scale = -width / (u_a * u_a);
    return {scale * Series(rho, [](int k) { return 1.0 / (k + 2); }),
            scale * Series(rho, [](int k) { return (k + 1.0) / (k + 2); })};
  }
  const Complex log_ratio = std::log(u_b / u_a);
  const Complex l_over_d2 = log_ratio / (d * d);
  return {width * (l_over_d2 - 1.0 / (u_a * d)), width * (1.0 / (u_b * d) - l_over_d2)};
}

}  // namespace parrom
