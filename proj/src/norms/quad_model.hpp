// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef PARROM_NORMS_QUAD_MODEL_HPP
#define PARROM_NORMS_QUAD_MODEL_HPP

#include <vector>
#include "parrom/model/pole_residue.hpp"

namespace parrom::detail
{

// Minimal complex arithmetic in IEEE quad precision. The H2 error and its gradient are small
// differences of large sums near an optimum; evaluating them here keeps their rounding far
// below what the optimizer needs to resolve.
struct QComplex
{
  __float128 re = 0, im = 0;

  QComplex() = default;
  QComplex(__float128 r, __float128 i = 0) : re(r), im(i) {}
  explicit QComplex(Complex z) : re(z.real()), im(z.imag()) {}
};

inline QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator-(QComplex a) { return {-a.re, -a.im}; }
inline QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
inline QComplex operator*(QComplex a, QComplex b)
{
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator*(__float128 a, QComplex b) { return {a * b.re, a * b.im}; }
inline QComplex operator/(QComplex a, QComplex b)
{
  const __float128 d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline QComplex conj(QComplex a) { return {a.re, -a.im}; }

using QVector = std::vector<QComplex>;

// Poles and residues at q. Rank-one residues keep their factors; full residues are stored
// column-major in `full`.
struct QModel
{
  std::vector<QComplex> poles;
  std::vector<QVector> b, c, full;
};

inline void QAccumulate(QVector &acc, double f, const CVector &v)
{
  const __float128 w = f;
  for (Eigen::Index k = 0; k < v.size(); k++)
  {
    acc[k] = acc[k] + w * QComplex(v(k));
  }
}

inline QModel QFreeze(const PoleResidueModel &m, ParamView q)
{
  QModel x;
  for (const auto &mode : m.modes())
  {
    QComplex lam(mode.lambda0);
    for (Eigen::Index k = 0; k < mode.lambda_lin.size(); k++)
    {
      lam = lam + static_cast<__float128>(q[k]) * QComplex(mode.lambda_lin(k));
    }
    if (!(lam.re < 0))
    {
      throw Instability("pole not in the open left half-plane",
                        static_cast<int>(x.poles.size()), ParamPoint(q.begin(), q.end()));
    }
    x.poles.push_back(lam);
    QVector b, c, full;
    if (mode.is_rank_one())
    {
      b.resize(m.ni());
      c.resize(m.no());
      for (const auto &t : mode.rank_one().b_terms)
      {
        QAccumulate(b, t.f(q), t.vector);
      }
      for (const auto &t : mode.rank_one().c_terms)
      {
        QAccumulate(c, t.f(q), t.vector);
      }
    }
    else
    {
      full.resize(static_cast<std::size_t>(m.ni()) * m.no());
      for (const auto &t : std::get<FullResidue>(mode.residue).terms)
      {
        QAccumulate(full, t.f(q), Eigen::Map<const CVector>(t.matrix.data(), t.matrix.size()));
      }
    }
    x.b.push_back(std::move(b));
    x.c.push_back(std::move(c));
    x.full.push_back(std::move(full));
  }
  return x;
}

// sum_k conj(u_k) v_k
inline QComplex QDot(const QVector &u, const QVector &v)
{
  QComplex s;
  for (std::size_t k = 0; k < u.size(); k++)
  {
    s = s + conj(u[k]) * v[k];
  }
  return s;
}

inline QVector QResidue(const QModel &m, std::size_t i)
{
  if (!m.full[i].empty())
  {
    return m.full[i];
  }
  const QVector &b = m.b[i], &c = m.c[i];
  QVector R(b.size() * c.size());
  for (std::size_t col = 0; col < b.size(); col++)
  {
    for (std::size_t row = 0; row < c.size(); row++)
    {
      R[col * c.size() + row] = c[row] * conj(b[col]);
    }
  }
  return R;
}

inline QComplex QInner(const QModel &m1, const QModel &m2)
{
  QComplex sum;
  for (std::size_t i = 0; i < m1.poles.size(); i++)
  {
    for (std::size_t j = 0; j < m2.poles.size(); j++)
    {
      QComplex tr;
      if (m1.full[i].empty() && m2.full[j].empty())
      {
        tr = QDot(m2.c[j], m1.c[i]) * QDot(m1.b[i], m2.b[j]);
      }
      else
      {
        tr = QDot(QResidue(m2, j), QResidue(m1, i));
      }
      sum = sum + tr / (-m1.poles[i] - conj(m2.poles[j]));
    }
  }
  return sum;
}

// M(s) v for a vector v of length ni.
inline QVector QApply(const QModel &m, QComplex s, const QVector &v, int ni, int no)
{
  QVector out(no);
  for (std::size_t i = 0; i < m.poles.size(); i++)
  {
    const QComplex inv = QComplex(1) / (s - m.poles[i]);
    if (m.full[i].empty())
    {
      const QComplex w = QDot(m.b[i], v) * inv;
      for (int k = 0; k < no; k++)
      {
        out[k] = out[k] + m.c[i][k] * w;
      }
    }
    else
    {
      for (int col = 0; col < ni; col++)
      {
        for (int row = 0; row < no; row++)
        {
          out[row] = out[row] + m.full[i][col * no + row] * v[col] * inv;
        }
      }
    }
  }
  return out;
}

// conj(u^* M(s)) as a vector of length ni, for u of length no.
inline QVector QApplyLeft(const QModel &m, QComplex s, const QVector &u, int ni, int no)
{
  QVector out(ni);
  for (std::size_t i = 0; i < m.poles.size(); i++)
  {
    const QComplex inv = conj(QComplex(1) / (s - m.poles[i]));
    if (m.full[i].empty())
    {
      const QComplex w = QDot(m.c[i], u) * inv;
      for (int k = 0; k < ni; k++)
      {
        out[k] = out[k] + m.b[i][k] * w;
      }
    }
    else
    {
      for (int col = 0; col < ni; col++)
      {
        for (int row = 0; row < no; row++)
        {
          out[col] = out[col] + conj(m.full[i][col * no + row]) * u[row] * inv;
        }
      }
    }
  }
  return out;
}

// u^* M'(s) v.
inline QComplex QBilinearDs(const QModel &m, QComplex s, const QVector &u, const QVector &v,
                            int ni, int no)
{
  QComplex sum;
  for (std::size_t i = 0; i < m.poles.size(); i++)
  {
    const QComplex d = s - m.poles[i];
    const QComplex inv2 = QComplex(1) / (d * d);
    QComplex t;
    if (m.full[i].empty())
    {
      t = QDot(u, m.c[i]) * QDot(m.b[i], v);
    }
    else
    {
      for (int col = 0; col < ni; col++)
      {
        for (int row = 0; row < no; row++)
        {
          t = t + conj(u[row]) * m.full[i][col * no + row] * v[col];
        }
      }
    }
    sum = sum - t * inv2;
  }
  return sum;
}

inline Complex ToComplex(QComplex z)
{
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

}  // namespace parrom::detail

#endif  // PARROM_NORMS_QUAD_MODEL_HPP
