// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#include "parrom/optimize/problem.hpp"

#include <cmath>
#include <limits>
#include "norms/quad_model.hpp"
#include "parrom/norms/h2.hpp"

namespace parrom
{

using namespace detail;

void OptimizerConfig::validate() const
{
  if (!(grad_tol > 0.0))
  {
    throw UsageError("OptimizerConfig: grad_tol must be positive");
  }
  if (max_iter < 0)
  {
    throw UsageError("OptimizerConfig: max_iter must be nonnegative");
  }
  if (!(fd_step > 0.0))
  {
    throw UsageError("OptimizerConfig: fd_step must be positive");
  }
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
  {
    throw UsageError("OptimizerConfig: armijo_c must lie in (0, 1)");
  }
  if (!(shrink > 0.0 && shrink < 1.0))
  {
    throw UsageError("OptimizerConfig: shrink must lie in (0, 1)");
  }
  if (quad_order < 1)
  {
    throw UsageError("OptimizerConfig: quad_order must be >= 1");
  }
}

ErrorObjective::ErrorObjective(PoleResidueModel fom, DecisionLayout layout,
                               const PoleResidueModel &tmpl, ParameterDomain dom, Execution ex)
  : fom_(std::move(fom)), layout_(std::move(layout)), dom_(std::move(dom)),
    rule_(tensor_gauss_legendre(dom_)), ex_(ex), base_coords_(layout_coords(tmpl, layout_))
{
  if (fom_.np() != layout_.np || fom_.ni() != layout_.ni || fom_.no() != layout_.no ||
      dom_.np() != layout_.np)
  {
    throw StructureError("ErrorObjective: fom, layout and domain dimensions differ");
  }
  require_stable(fom_, dom_, "ErrorObjective (fom)");
  const auto mask = layout_.free_mask();
  for (int i = 0; i < static_cast<int>(mask.size()); i++)
  {
    if (mask[i])
    {
      free_index_.push_back(i);
    }
  }
}

RVector ErrorObjective::pack(const PoleResidueModel &rom) const
{
  return parrom::pack(rom, layout_);
}

PoleResidueModel ErrorObjective::unpack(const RVector &x) const
{
  if (x.size() != size())
  {
    throw StructureError("ErrorObjective: decision vector has the wrong length");
  }
  RVector all = base_coords_;
  for (int j = 0; j < size(); j++)
  {
    all(free_index_[j]) = x(j);
  }
  return model_from_coords(all, layout_);
}

bool ErrorObjective::is_stable(const RVector &x) const
{
  return check_stability(unpack(x), dom_).stable;
}

double ErrorObjective::value(const RVector &x) const { return value_extended(x).hi; }

ExtendedValue ErrorObjective::value_extended(const RVector &x) const
{
  constexpr ExtendedValue sentinel{std::numeric_limits<double>::infinity(), 0.0};
  if (!x.allFinite())
  {
    return sentinel;
  }
  const PoleResidueModel rom = unpack(x);
  if (!check_stability(rom, dom_).stable)
  {
    return sentinel;
  }
  const auto err = h2l2_error(fom_, rom, dom_, rule_, ex_);
  return std::isfinite(err.total_sq) ? ExtendedValue{err.total_sq, err.total_sq_lo} : sentinel;
}

namespace
{

//
// Gradient of ||H - Hr||^2 at one parameter node with respect to every layout coordinate.
// With s_l = -conj(lambda_l), D0 = (Hr - H)(s_l) and D1 = (H' - Hr')(s_l), the Wirtinger
// derivatives are
//   dJ/dlambda_l = conj(c_l^* D1 b_l),  dJ/dc_l = conj(D0 b_l)^T,  dJ/db_l = c_l^* D0,
// and a real coordinate x moves J by 2 Re sum (dJ/dz) (dz/dx).
//
std::vector<__float128> NodeGradient(const PoleResidueModel &fom, const PoleResidueModel &rom,
                                     const DecisionLayout &layout, ParamView q)
{
  const int np = layout.np, ni = layout.ni, no = layout.no, ns = layout.n_states();
  const QModel f = QFreeze(fom, q), r = QFreeze(rom, q);
  std::vector<QComplex> g_lambda(ns);
  std::vector<QVector> g_b(ns), g_c(ns);
  for (int l = 0; l < ns; l++)
  {
    const QVector &b = r.b[l], &c = r.c[l];
    const QComplex s = -conj(r.poles[l]);
    const QVector hr_b = QApply(r, s, b, ni, no), h_b = QApply(f, s, b, ni, no);
    const QVector c_hr = QApplyLeft(r, s, c, ni, no), c_h = QApplyLeft(f, s, c, ni, no);
    g_lambda[l] = conj(QBilinearDs(f, s, c, b, ni, no) - QBilinearDs(r, s, c, b, ni, no));
    g_c[l].resize(no);
    for (int k = 0; k < no; k++)
    {
      g_c[l][k] = conj(hr_b[k] - h_b[k]);
    }
    g_b[l].resize(ni);
    for (int k = 0; k < ni; k++)
    {
      g_b[l][k] = conj(c_hr[k] - c_h[k]);
    }
  }

  // Re(i z) = -Im(z).
  auto re_i = [](QComplex z) { return -z.im; };
  std::vector<__float128> grad(layout.n_coords(), 0);
  int pos = 0, row = 0;
  std::vector<int> rows;
  for (const auto &blk : layout.blocks)
  {
    rows.push_back(row);
    if (blk.kind == BlockKind::Real1x1)
    {
      const __float128 g = 2 * g_lambda[row].re;
      grad[pos++] += g;
      for (int k = 0; k < np; k++)
      {
        grad[pos++] += g * q[k];
      }
    }
    else
    {
      const __float128 gs = 2 * (g_lambda[row] + g_lambda[row + 1]).re;
      const __float128 gw = 2 * re_i(g_lambda[row] - g_lambda[row + 1]);
      grad[pos++] += gs;
      for (int k = 0; k < np; k++)
      {
        grad[pos++] += gs * q[k];
      }
      grad[pos++] += gw;
      for (int k = 0; k < np; k++)
      {
        grad[pos++] += gw * q[k];
      }
    }
    row += blk.states();
  }
  // For a conjugate pair b = (B[r] + i B[r+1]) / 2 and c = C[:, r] + i C[:, r+1].
  for (const auto &fn : layout.b_fns)
  {
    const __float128 ft = fn(q);
    for (std::size_t bi = 0; bi < layout.blocks.size(); bi++)
    {
      const int r0 = rows[bi];
      for (int k = 0; k < ni; k++)
      {
        if (layout.blocks[bi].kind == BlockKind::Real1x1)
        {
          grad[pos + r0 * ni + k] += 2 * g_b[r0][k].re * ft;
        }
        else
        {
          const QComplex gp = g_b[r0][k], gm = g_b[r0 + 1][k];
          grad[pos + r0 * ni + k] += (gp + gm).re * ft;
          grad[pos + (r0 + 1) * ni + k] += re_i(gp - gm) * ft;
        }
      }
    }
    pos += ns * ni;
  }
  for (const auto &fn : layout.c_fns)
  {
    const __float128 ft = fn(q);
    for (std::size_t bi = 0; bi < layout.blocks.size(); bi++)
    {
      const int c0 = rows[bi];
      for (int k = 0; k < no; k++)
      {
        if (layout.blocks[bi].kind == BlockKind::Real1x1)
        {
          grad[pos + k * ns + c0] += 2 * g_c[c0][k].re * ft;
        }
        else
        {
          const QComplex gp = g_c[c0][k], gm = g_c[c0 + 1][k];
          grad[pos + k * ns + c0] += 2 * (gp + gm).re * ft;
          grad[pos + k * ns + c0 + 1] += 2 * re_i(gp - gm) * ft;
        }
      }
    }
    pos += no * ns;
  }
  return grad;
}

}  // namespace

RVector ErrorObjective::coordinate_gradient(const RVector &x) const
{
  const PoleResidueModel rom = unpack(x);
  require_stable(rom, dom_, "ErrorObjective::gradient");
  std::vector<std::vector<__float128>> per_node(rule_.size());
  node_sweep(rule_.size(), ex_,
             [&](std::size_t n) { per_node[n] = NodeGradient(fom_, rom, layout_, rule_.nodes[n]); });
  RVector g(layout_.n_coords());
  for (Eigen::Index k = 0; k < g.size(); k++)
  {
    __float128 sum = 0;
    for (std::size_t n = 0; n < rule_.size(); n++)
    {
      sum += static_cast<__float128>(rule_.weights[n]) * per_node[n][k];
    }
    g(k) = static_cast<double>(sum);
  }
  return g;
}

RVector ErrorObjective::gradient(const RVector &x) const
{
  const RVector all = coordinate_gradient(x);
  RVector g(size());
  for (int j = 0; j < size(); j++)
  {
    g(j) = all(free_index_[j]);
  }
  return g;
}

RVector grad_fd(const std::function<double(const RVector &)> &f, const RVector &x, double h)
{
  RVector g(x.size());
  double f0 = std::numeric_limits<double>::quiet_NaN();
  bool have_f0 = false;
  auto probe = [&](Eigen::Index k, double t)
  {
    RVector y = x;
    y(k) += t;
    return f(y);
  };
  for (Eigen::Index k = 0; k < x.size(); k++)
  {
    const double step = h * (1.0 + std::abs(x(k)));
    const double fp = probe(k, step), fm = probe(k, -step);
    if (std::isfinite(fp) && std::isfinite(fm))
    {
      // Fourth-order central stencil when the outer probes are feasible too.
      const double fpp = probe(k, 2.0 * step), fmm = probe(k, -2.0 * step);
      if (std::isfinite(fpp) && std::isfinite(fmm))
      {
        g(k) = (8.0 * (fp - fm) - (fpp - fmm)) / (12.0 * step);
      }
      else
      {
        g(k) = (fp - fm) / (2.0 * step);
      }
      continue;
    }
    if (!have_f0)
    {
      f0 = f(x);
      have_f0 = true;
    }
    if (std::isfinite(fp))
    {
      g(k) = (fp - f0) / step;
    }
    else if (std::isfinite(fm))
    {
      g(k) = (f0 - fm) / step;
    }
    else
    {
      g(k) = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return g;
}

RVector grad_fd(const ErrorObjective &obj, const RVector &x, double h)
{
  return grad_fd([&](const RVector &y) { return obj.value(y); }, x, h);
}

}  // namespace parrom
