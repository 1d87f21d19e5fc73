// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/norms/h2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "norms/quad_model.hpp"

namespace parrom
{

using namespace detail;

namespace
{

void RequireStablePoles(const ModelAtQ &m, const char *what)
{
  for (std::size_t l = 0; l < m.poles.size(); l++)
  {
    if (!(m.poles[l].real() < 0.0))
    {
      std::ostringstream msg;
      msg << what << ": pole " << l << " = " << m.poles[l] << " is not in the open left half-plane";
      throw Instability(msg.str(), static_cast<int>(l), {});
    }
  }
}

double RealPart(Complex z, const char *what)
{
  if (std::abs(z.imag()) > 1e-10 * (1.0 + std::abs(z.real())))
  {
    std::ostringstream msg;
    msg << what << ": assembled real quantity has imaginary part " << z.imag();
    throw ConsistencyError(msg.str());
  }
  return z.real();
}

}  // namespace

Complex h2_inner_pr(const ModelAtQ &m1, const ModelAtQ &m2)
{
  RequireStablePoles(m1, "h2_inner_pr");
  RequireStablePoles(m2, "h2_inner_pr");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < m1.poles.size(); i++)
  {
    for (std::size_t j = 0; j < m2.poles.size(); j++)
    {
      const Complex tr = (m2.residues[j].conjugate().cwiseProduct(m1.residues[i])).sum();
      sum += tr / (-m1.poles[i] - std::conj(m2.poles[j]));
    }
  }
  return sum;
}

double h2_error_sq_at_q(const ModelAtQ &fom, const ModelAtQ &rom)
{
  const double hh = RealPart(h2_inner_pr(fom, fom), "h2_error_sq_at_q");
  const double rr = RealPart(h2_inner_pr(rom, rom), "h2_error_sq_at_q");
  const Complex hr = h2_inner_pr(fom, rom);
  return hh - 2.0 * hr.real() + rr;
}

namespace
{

__float128 ErrorSqQuad(const PoleResidueModel &fom, const PoleResidueModel &rom, ParamView q)
{
  if (fom.ni() != rom.ni() || fom.no() != rom.no())
  {
    throw StructureError("h2_error_sq_at_q: fom and rom dimensions differ");
  }
  const QModel f = QFreeze(fom, q), r = QFreeze(rom, q);
  const QComplex hh = QInner(f, f), rr = QInner(r, r), hr = QInner(f, r);
  RealPart(ToComplex(hh), "h2_error_sq_at_q");
  RealPart(ToComplex(rr), "h2_error_sq_at_q");
  return hh.re - 2 * hr.re + rr.re;
}

}  // namespace

double h2_error_sq_at_q(const PoleResidueModel &fom, const PoleResidueModel &rom, ParamView q)
{
  return static_cast<double>(ErrorSqQuad(fom, rom, q));
}

double h2_norm_freq_oracle(const ModelAtQ &model, double tol)
{
  RequireStablePoles(model, "h2_norm_freq_oracle");
  if (model.poles.empty())
  {
    return 0.0;
  }
  constexpr double half_pi = std::numbers::pi / 2;
  auto integrand = [&](double theta)
  {
    const double t = std::tan(theta);
    return eval_transfer(model, Complex(0.0, t)).squaredNorm() * (1.0 + t * t);
  };
  // Split at every resonance and its half-width so that narrow peaks sit on breakpoints.
  std::vector<double> cuts = {-half_pi, half_pi};
  for (const auto &p : model.poles)
  {
    for (const double off : {-1.0, 0.0, 1.0})
    {
      cuts.push_back(std::atan(p.imag() + off * std::abs(p.real())));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Global adaptive refinement: always bisect the segment with the largest error estimate.
  struct Segment
  {
    double a, b, value, error, l1;
    bool operator<(const Segment &o) const { return error < o.error; }
  };
  // Kronrod 31 / Gauss 15 pair on [a, b]; the error estimate is the gap between the two.
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  using Gauss = boost::math::quadrature::gauss<double, 15>;
  auto rule = [&](double a, double b)
  {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const auto &x = Kronrod::abscissa();
    const auto &wk = Kronrod::weights();
    const auto &wg = Gauss::weights();
    double k = 0.0, g = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < x.size(); i++)
    {
      const double fp = integrand(mid + half * x[i]);
      const double fs = i == 0 ? fp : fp + integrand(mid - half * x[i]);
      k += wk[i] * fs;
      l1 += wk[i] * std::abs(fs);
      // Gauss nodes are the even-indexed Kronrod abscissae, starting with the center.
      if (i % 2 == 0)
      {
        g += wg[i / 2] * fs;
      }
    }
    return Segment{a, b, half * k, half * std::abs(k - g), half * l1};
  };
  std::priority_queue<Segment> heap;
  double err_total = 0.0, l1_total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); k++)
  {
    heap.push(rule(cuts[k], cuts[k + 1]));
  }
  constexpr std::size_t kMaxSegments = 20000;
  auto totals = [&]()
  {
    auto copy = heap;
    err_total = l1_total = 0.0;
    while (!copy.empty())
    {
      err_total += copy.top().error;
      l1_total += copy.top().l1;
      copy.pop();
    }
  };
  totals();
  while (err_total > tol * l1_total && heap.size() < kMaxSegments)
  {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = rule(worst.a, mid), right = rule(mid, worst.b);
    err_total += left.error + right.error - worst.error;
    l1_total += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  totals();
  if (!(err_total <= tol * l1_total))
  {
    std::ostringstream msg;
    msg << "h2_norm_freq_oracle: error estimate " << err_total << " exceeds tolerance "
        << tol * l1_total;
    throw NonConvergence(msg.str());
  }
  // Summed in segment order so that the result does not depend on the refinement history.
  std::vector<Segment> done;
  while (!heap.empty())
  {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const Segment &x, const Segment &y) { return x.a < y.a; });
  double total = 0.0;
  for (const auto &seg : done)
  {
    total += seg.value;
  }
  return std::sqrt(total / (2.0 * std::numbers::pi));
}

double h2_norm_freq_oracle(const PoleResidueModel &model, ParamView q, double tol)
{
  return h2_norm_freq_oracle(freeze(model, q), tol);
}

ErrorBreakdown h2l2_error(const PoleResidueModel &fom, const PoleResidueModel &rom,
                          const ParameterDomain &dom, Execution ex)
{
  return h2l2_error(fom, rom, dom, tensor_gauss_legendre(dom), ex);
}

ErrorBreakdown h2l2_error(const PoleResidueModel &fom, const PoleResidueModel &rom,
                          const ParameterDomain &dom, const TensorRule &rule, Execution ex)
{
  if (fom.ni() != rom.ni() || fom.no() != rom.no() || fom.np() != rom.np())
  {
    throw StructureError("h2l2_error: fom and rom dimensions differ");
  }
  require_stable(fom, dom, "h2l2_error (fom)");
  require_stable(rom, dom, "h2l2_error (rom)");
  ErrorBreakdown out;
  out.per_node.resize(rule.size());
  std::vector<__float128> exact(rule.size());
  node_sweep(rule.size(), ex,
             [&](std::size_t n)
             {
               const auto &q = rule.nodes[n];
               exact[n] = ErrorSqQuad(fom, rom, q);
               out.per_node[n] = {q, rule.weights[n], static_cast<double>(exact[n])};
             });
  // Summed before rounding so that total_sq is the correctly rounded quadrature value.
  __float128 total = 0;
  for (std::size_t n = 0; n < rule.size(); n++)
  {
    total += static_cast<__float128>(rule.weights[n]) * exact[n];
  }
  out.total_sq = static_cast<double>(total);
  out.total_sq_lo = static_cast<double>(total - static_cast<__float128>(out.total_sq));
  return out;
}

}  // namespace parrom
