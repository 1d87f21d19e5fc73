// Copyright the parrom authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "parrom/cli/benchmarks.hpp"
#include "parrom/conditions/dyn_form.hpp"
#include "parrom/conditions/general.hpp"
#include "parrom/conditions/io_form.hpp"
#include "parrom/conditions/kernel.hpp"
#include "parrom/conditions/report.hpp"
#include "parrom/norms/h2.hpp"
#include "parrom/norms/quadrature.hpp"
#include "support.hpp"

using namespace parrom;
using namespace parrom::test;

namespace
{

// Complex integral over [a, b] by adaptive Gauss-Kronrod on the real and imaginary parts.
template <typename F>
Complex Integrate(F f, double a, double b)
{
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double re = GK::integrate([&](double q) { return f(q).real(); }, a, b, 12, 1e-14);
  const double im = GK::integrate([&](double q) { return f(q).imag(); }, a, b, 12, 1e-14);
  return {re, im};
}

template <typename F>
CMatrix IntegrateMatrix(F f, int rows, int cols, double a, double b)
{
  CMatrix out(rows, cols);
  for (int i = 0; i < rows; i++)
  {
    for (int j = 0; j < cols; j++)
    {
      out(i, j) = Integrate([&](double q) { return f(q)(i, j); }, a, b);
    }
  }
  return out;
}

LogKernelPoint RandomKernelPoint(Rng &rng, bool near_coincident)
{
  LogKernelPoint pt;
  pt.a = Uniform(rng, -2.0, 2.0);
  pt.b = pt.a + LogUniform(rng, 0.01, 10.0);
  pt.sigma_a = Complex(-LogUniform(rng, 0.01, 10.0), Uniform(rng, -20, 20));
  pt.sigma_b = Complex(-LogUniform(rng, 0.01, 10.0), Uniform(rng, -20, 20));
  pt.s_a = Complex(LogUniform(rng, 0.01, 10.0), Uniform(rng, -20, 20));
  if (near_coincident)
  {
    const Complex ua = pt.s_a - pt.sigma_a;
    const Complex rho(Uniform(rng, -1, 1), Uniform(rng, -1, 1));
    pt.s_b = pt.sigma_b + ua * (1.0 + LogUniform(rng, 1e-12, 0.04) * rho / std::abs(rho));
  }
  else
  {
    pt.s_b = Complex(LogUniform(rng, 0.01, 10.0), Uniform(rng, -20, 20));
  }
  return pt;
}

// The kernel as the integral of 1 / (s(q) - sigma(q)) with both linear on [a, b].
Complex KernelByQuadrature(const LogKernelPoint &pt)
{
  const Complex ua = pt.s_a - pt.sigma_a, ub = pt.s_b - pt.sigma_b;
  return Integrate([&](double q) { return 1.0 / (ua + (q - pt.a) / (pt.b - pt.a) * (ub - ua)); },
                   pt.a, pt.b);
}

struct DynPair
{
  PoleResidueModel fom, rom;
  ParameterDomain dom;
};

DynPair SynthPair()
{
  const BenchmarkSpec spec = make_benchmark("synth6");
  return {state_space_to_pole_residue(spec.fom, spec.domain), truncation_init(spec), spec.domain};
}

const ConditionReport *Find(const std::vector<ConditionReport> &reports, ConditionId id,
                            int mode, int index)
{
  for (const auto &r : reports)
  {
    if (r.id == id && r.mode == mode && r.index == index)
    {
      return &r;
    }
  }
  return nullptr;
}

}  // namespace

TEST_CASE("kernel closed-form examples")
{
  LogKernelPoint pt;
  pt.s_a = pt.s_b = 2.0;
  pt.sigma_a = pt.sigma_b = 0.0;
  CHECK(std::abs(f_kernel(pt) - 0.5) <= 1e-16);

  pt.s_a = 1.0;
  pt.s_b = std::numbers::e;
  CHECK(std::abs(f_kernel(pt) - 1.0 / (std::numbers::e - 1.0)) <= 1e-15);
  CHECK(std::abs(f_kernel(pt) - 0.581977) <= 1e-6);

  pt.s_a = Complex(-1.0, 0.0);
  CHECK_THROWS_AS(f_kernel(pt), BranchDomain);
  CHECK_THROWS_AS(f_kernel_partials(pt), BranchDomain);
}

TEST_CASE("kernel equals its defining integral")
{
  Rng rng(31);
  for (int k = 0; k < 100; k++)
  {
    const auto pt = RandomKernelPoint(rng, k % 4 == 0);
    CAPTURE(k);
    CHECK(RelDiff(KernelByQuadrature(pt), f_kernel(pt)) <= 1e-10);
  }
}

TEST_CASE("kernel partials against finite differences")
{
  Rng rng(32);
  for (int k = 0; k < 40; k++)
  {
    const auto pt = RandomKernelPoint(rng, k % 4 == 0);
    const auto d = f_kernel_partials(pt);
    const double h = 1e-5 * std::min(std::abs(pt.s_a - pt.sigma_a), std::abs(pt.s_b - pt.sigma_b));
    auto shifted = [&](Complex da, Complex db)
    {
      LogKernelPoint p = pt;
      p.s_a += da;
      p.s_b += db;
      return f_kernel(p);
    };
    const Complex fd_a = (shifted(h, 0.0) - shifted(-h, 0.0)) / (2 * h);
    const Complex fd_b = (shifted(0.0, h) - shifted(0.0, -h)) / (2 * h);
    const Complex fd_ab = (shifted(h, h) - shifted(-h, -h)) / (2 * h);
    CAPTURE(k);
    CHECK(RelDiff(fd_a, d.ds_a) <= 1e-7);
    CHECK(RelDiff(fd_b, d.ds_b) <= 1e-7);
    CHECK(RelDiff(fd_ab, d.ds_a + d.ds_b) <= 1e-7);
  }
}

TEST_CASE("kernel partials at a symmetric point")
{
  Rng rng(33);
  for (int k = 0; k < 10; k++)
  {
    LogKernelPoint pt = RandomKernelPoint(rng, false);
    pt.s_b = pt.sigma_b + (pt.s_a - pt.sigma_a);
    const Complex u = pt.s_a - pt.sigma_a;
    const auto d = f_kernel_partials(pt);
    CHECK(RelDiff(-(pt.b - pt.a) / (u * u), d.ds_a + d.ds_b) <= 1e-14);
    CHECK(RelDiff(-(pt.b - pt.a) / (2.0 * u * u), d.ds_a) <= 1e-14);
    CHECK(RelDiff((pt.b - pt.a) / u, f_kernel(pt)) <= 1e-15);
  }
}

TEST_CASE("modified function equals parameter integrals")
{
  Rng rng(34);
  std::vector<std::pair<PoleResidueModel, PoleResidueModel>> pairs;
  const auto synth = SynthPair();
  pairs.emplace_back(synth.fom, synth.rom);
  const auto dom = UnitBox(1);
  const auto sys = RandomDynSystem(rng, 3, 2, 2, 3);
  pairs.emplace_back(state_space_to_pole_residue(sys, dom),
                     state_space_to_pole_residue(sys.truncate(3), dom));

  for (std::size_t t = 0; t < pairs.size(); t++)
  {
    const auto &[fom, rom] = pairs[t];
    const double a = t == 0 ? synth.dom.lo[0] : 0.0, b = t == 0 ? synth.dom.hi[0] : 1.0;
    for (int l = 0; l < rom.order(); l++)
    {
      const auto &mode = rom.mode(l);
      const ParamPoint qa = {a}, qb = {b};
      const Complex sa = -std::conj(mode.pole(qa)), sb = -std::conj(mode.pole(qb));
      const GValue G = eval_G(fom, sa, sb, a, b);
      auto s_of = [&](double q) { return -std::conj(mode.pole(ParamPoint{q})); };
      const int no = fom.no(), ni = fom.ni();
      const CMatrix h = IntegrateMatrix(
          [&](double q) { return eval_transfer(fom, s_of(q), ParamPoint{q}); }, no, ni, a, b);
      const CMatrix hd = IntegrateMatrix(
          [&](double q) { return eval_transfer_ds(fom, s_of(q), ParamPoint{q}); }, no, ni, a, b);
      const CMatrix qhd = IntegrateMatrix(
          [&](double q) { return CMatrix(q * eval_transfer_ds(fom, s_of(q), ParamPoint{q})); },
          no, ni, a, b);
      CAPTURE(t);
      CAPTURE(l);
      CHECK(RelDiff(h, G.g) <= 1e-9);
      CHECK(RelDiff(hd, G.dg_ds_a + G.dg_ds_b) <= 1e-8);
      CHECK(RelDiff(qhd, a * G.dg_ds_a + b * G.dg_ds_b) <= 1e-8);
    }
  }
}

TEST_CASE("modified function of a parameter-independent mode")
{
  const auto one = ScalarParamFunction::constant(1);
  PoleResidueMode m;
  m.lambda0 = Complex(-2.0, 1.0);
  m.lambda_lin = CVector::Zero(1);
  CMatrix phi(2, 1);
  phi << Complex(1.0, 2.0), Complex(-0.5, 0.0);
  m.residue = FullResidue{{{one, phi}}};
  const PoleResidueModel fom(1, 1, 2, {m});
  const Complex s(0.7, -0.3);
  const GValue G = eval_G(fom, s, s, 0.25, 2.0);
  CHECK(RelDiff(CMatrix(1.75 * phi / (s - m.lambda0)), G.g) <= 1e-15);
}

TEST_CASE("conditions hold exactly for a copy of the full model")
{
  const auto synth = SynthPair();
  const auto &fom = synth.fom;
  const double a = synth.dom.lo[0], b = synth.dom.hi[0];
  const auto thm5 = check_thm5(fom, fom, a, b);
  CHECK(thm5.size() == 4 * 6);
  CHECK(max_rel_err(thm5) <= 1e-12);
  const auto thm3 = check_thm3(fom, fom, synth.dom, basis_from_model(fom));
  CHECK(max_rel_err(thm3) <= 1e-12);
  CHECK(all_within(thm3, 1e-12));

  for (const double t : {0.1, 3.7})
  {
    const auto scaled = GaugeScaled(fom, t);
    CHECK(max_rel_err(check_thm5(fom, scaled, a, b)) <= 1e-12);
    CHECK(max_rel_err(check_thm3(fom, scaled, synth.dom, basis_from_model(scaled))) <= 1e-12);
  }
}

TEST_CASE("basis of the synthetic reduced model")
{
  const auto basis = basis_from_model(SynthPair().rom);
  CHECK(basis.alpha.size() == 2);
  CHECK(basis.alpha[1] == ScalarParamFunction::coordinate(1, 0));
  CHECK(basis.beta.size() == 1);
  CHECK(basis.gamma.size() == 1);
}

TEST_CASE("quadrature and closed-form checkers agree")
{
  const auto synth = SynthPair();
  const double a = synth.dom.lo[0], b = synth.dom.hi[0];
  const auto modes = pair_representatives(synth.rom);
  CHECK(modes == std::vector<int>{0, 2});
  const auto thm5 = check_thm5(synth.fom, synth.rom, a, b, modes);
  const auto thm3 = check_thm3(synth.fom, synth.rom, synth.dom, dyn_form_basis(), modes);
  const auto cross = cross_check_thm3_thm5(thm3, thm5, a, b);
  CHECK(cross.entries.size() == 4 * modes.size());
  CHECK(cross.max_rel_diff() <= 1e-8);
  // The truncated model is far from optimal.
  CHECK(max_rel_err(thm5) >= 1e-3);

  // Under-resolved quadrature is flagged and visibly disagrees.
  const auto coarse = check_thm3(synth.fom, synth.rom, synth.dom.with_quad_order(8),
                                 dyn_form_basis(), modes);
  CHECK_FALSE(coarse.front().certified);
  CHECK_FALSE(all_within(coarse, 1.0));
  CHECK_THROWS_AS(cross_check_thm3_thm5({}, thm5, a, b), StructureError);
}

TEST_CASE("conjugate modes give conjugate residuals")
{
  const auto synth = SynthPair();
  const auto thm3 = check_thm3(synth.fom, synth.rom, synth.dom, basis_from_model(synth.rom));
  const auto thm5 = check_thm5(synth.fom, synth.rom, synth.dom.lo[0], synth.dom.hi[0]);
  for (const auto *reports : {&thm3, &thm5})
  {
    for (const auto &r : *reports)
    {
      const int partner = synth.rom.conjugate_partner(r.mode);
      const auto *p = Find(*reports, r.id, partner, r.index);
      REQUIRE(p != nullptr);
      CHECK(std::abs(r.rel_err - p->rel_err) <= 1e-12 * r.rel_err);
      CHECK(RelDiff(r.lhs.conjugate(), p->lhs) <= 1e-12);
      CHECK(RelDiff(r.rhs.conjugate(), p->rhs) <= 1e-12);
    }
  }
}

TEST_CASE("converged synthetic model satisfies the conditions and they are not vacuous")
{
  const BenchmarkSpec spec = make_benchmark("synth6");
  const auto fom = state_space_to_pole_residue(spec.fom, spec.domain);
  const auto init = truncation_init(spec);
  const auto layout = benchmark_layout(spec, init);
  const auto res = OptimizeBenchmark("synth6");
  REQUIRE(res.converged);
  const double a = spec.domain.lo[0], b = spec.domain.hi[0];
  const auto modes = pair_representatives(res.rom);
  const auto thm5 = check_thm5(fom, res.rom, a, b, modes);
  CHECK(thm5.size() == 8);
  CHECK(max_rel_err(thm5) <= 1e-6);
  CHECK(max_rel_err(check_thm3(fom, res.rom, spec.domain, dyn_form_basis(), modes)) <= 1e-6);

  for (int k = 0; k < res.x.size(); k++)
  {
    RVector x = res.x;
    x(k) += 1e-2;
    const auto moved = unpack(x, layout, init);
    CAPTURE(k);
    CHECK(max_rel_err(check_thm5(fom, moved, a, b, modes)) > 1e-4);
  }
}

TEST_CASE("zero residue modes are reported as degenerate")
{
  auto synth = SynthPair();
  std::vector<PoleResidueMode> modes = synth.rom.modes();
  for (int l : {2, 3})
  {
    for (auto &t : std::get<RankOneResidue>(modes[l].residue).c_terms)
    {
      t.vector.setZero();
    }
  }
  const PoleResidueModel rom(1, 1, 1, modes, true);
  CHECK(has_zero_residue(rom.mode(2)));
  const auto reports = check_thm5(synth.fom, rom, synth.dom.lo[0], synth.dom.hi[0]);
  for (const auto &r : reports)
  {
    CHECK(r.degenerate == (r.mode >= 2));
    if (r.degenerate)
    {
      CHECK(r.rel_err == 0.0);
      CHECK(r.note == "zero residue");
    }
  }
}

TEST_CASE("structure requirements")
{
  Rng rng(35);
  const auto io = state_space_to_pole_residue(RandomIoSystem(rng, 1, 1, 1, 1), UnitBox(2));
  CHECK_THROWS_AS(require_dyn_form(io, "test"), StructureError);
  CHECK_THROWS_AS(check_thm5(io, io, 0.0, 1.0), StructureError);
  const auto synth = SynthPair();
  CHECK_THROWS_AS(build_aux_tf(synth.fom), StructureError);
  CHECK_THROWS_AS(check_thm4(synth.fom, synth.rom), StructureError);
}

TEST_CASE("report helpers")
{
  for (int k = 0; k <= static_cast<int>(ConditionId::Cor5); k++)
  {
    const auto id = static_cast<ConditionId>(k);
    CHECK(condition_from_name(condition_name(id)) == id);
  }
  CHECK(std::string(condition_name(ConditionId::Thm5_3)) == "thm5_3");
  CHECK_FALSE(condition_from_name("thm9").has_value());

  CMatrix lhs(1, 2), rhs(1, 2);
  lhs << 3.0, 4.0;
  rhs << 3.0, 4.5;
  const auto r = make_report(ConditionId::Thm4_2, 1, -1, lhs, rhs);
  CHECK(r.abs_err == doctest::Approx(0.5));
  CHECK(r.rel_err == doctest::Approx(0.1));
  const auto zero = make_report(ConditionId::Thm4_2, 1, -1, CMatrix::Zero(1, 1), CMatrix::Ones(1, 1));
  CHECK(zero.rel_err == doctest::Approx(1e300));

  auto nan = r;
  nan.rel_err = std::nan("");
  CHECK(max_rel_err({r, nan}) == std::numeric_limits<double>::infinity());
  auto skipped = nan;
  skipped.skipped = true;
  CHECK(max_rel_err({r, skipped}) == doctest::Approx(0.1));
  auto uncertified = r;
  uncertified.certified = false;
  CHECK_FALSE(all_within({uncertified}, 1.0));
}

TEST_CASE("auxiliary transfer function recombines to the model")
{
  Rng rng(36);
  for (int trial = 0; trial < 5; trial++)
  {
    const int ni = 1 + trial % 2, no = 1 + (trial + 1) % 2;
    const auto sys = RandomIoSystem(rng, 2, 1, ni, no);
    const auto model = state_space_to_pole_residue(sys, UnitBox(2));
    const ModelAtQ aux = build_aux_tf(model);
    CHECK(aux.ni == 2 * ni);
    CHECK(aux.no == 2 * no);
    for (int k = 0; k < 20; k++)
    {
      const Complex s(Uniform(rng, 0.0, 2.0), Uniform(rng, -10, 10));
      const ParamPoint q = {Uniform(rng, -1, 2), Uniform(rng, -1, 2)};
      const CMatrix H = recombine_aux(eval_transfer(aux, s), q[0], q[1], ni, no);
      CHECK(RelDiff(eval_transfer(model, s, q), H) <= 1e-12);
    }
    // Dense resolvent of the stacked realization [C1; C2] (sI - A)^{-1} [B1 B2].
    const CMatrix A = sys.A(ParamPoint{0.0, 0.0});
    CMatrix Bs(A.rows(), 2 * ni), Cs(2 * no, A.rows());
    Bs << sys.B_terms()[0].matrix, sys.B_terms()[1].matrix;
    Cs << sys.C_terms()[0].matrix, sys.C_terms()[1].matrix;
    const Complex s(0.3, 2.0);
    const CMatrix dense =
        Cs * (s * CMatrix::Identity(A.rows(), A.rows()) - A).partialPivLu().solve(Bs);
    CHECK(RelDiff(dense, eval_transfer(aux, s)) <= 1e-10);
  }

  // Without the q-dependent parts only the leading block survives.
  const auto one = ScalarParamFunction::constant(2);
  PoleResidueMode m;
  m.lambda0 = -1.0;
  m.lambda_lin = CVector::Zero(2);
  m.residue = RankOneResidue{{{one, CVector::Ones(1)}}, {{one, CVector::Ones(1)}}};
  const ModelAtQ aux = build_aux_tf(PoleResidueModel(2, 1, 1, {m}));
  const CMatrix v = eval_transfer(aux, 0.5);
  CHECK(std::abs(v(0, 0)) > 0.0);
  CHECK(v(0, 1) == Complex(0.0));
  CHECK(v(1, 0) == Complex(0.0));
  CHECK(v(1, 1) == Complex(0.0));
}

TEST_CASE("moment weights")
{
  const auto w = moment_weights(1, 1);
  RMatrix expect(2, 2);
  expect << 1.0, 0.5, 0.5, 1.0 / 3.0;
  CHECK((w.wb - expect).norm() == 0.0);
  CHECK((w.wc - expect).norm() == 0.0);

  const auto w23 = moment_weights(2, 3);
  CHECK(w23.wb.rows() == 4);
  CHECK(w23.wc.rows() == 6);
  const auto rule = tensor_gauss_legendre(UnitBox(2, 4));
  for (const auto *m : {&w23.wb, &w23.wc})
  {
    const int n = static_cast<int>(m->rows()) / 2;
    RMatrix quad = RMatrix::Zero(2 * n, 2 * n);
    for (std::size_t k = 0; k < rule.size(); k++)
    {
      RMatrix basis(2 * n, n);
      basis << RMatrix::Identity(n, n), rule.nodes[k][0] * RMatrix::Identity(n, n);
      quad += rule.weights[k] * basis * basis.transpose();
    }
    CHECK((quad - *m).norm() <= 1e-14);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(*m);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("weighted closed form equals the quadrature error on random io pairs")
{
  Rng rng(37);
  const auto dom = UnitBox(2, 8);
  for (int trial = 0; trial < 5; trial++)
  {
    const int ni = 1 + trial % 2, no = 1 + trial % 3;
    const auto fom = state_space_to_pole_residue(RandomIoSystem(rng, 2, 2, ni, no), dom);
    const auto rom = state_space_to_pole_residue(RandomIoSystem(rng, 1, 1, ni, no), dom);
    const double closed = io_h2l2_error_sq(build_aux_tf(fom), build_aux_tf(rom));
    const double quad = h2l2_error(fom, rom, dom).total_sq;
    CHECK(std::abs(closed - quad) <= 1e-8 * quad);

    const auto thm4 = check_thm4(fom, rom);
    const auto thm3 = check_thm3(fom, rom, UnitBox(2, 16), io_form_basis());
    CHECK(cross_check_thm3_thm4(thm3, thm4, ni, no).max_rel_diff() <= 1e-8);
    CHECK(max_rel_err(thm4) >= 1e-3);
    CHECK(max_rel_err(check_thm4(fom, fom)) <= 1e-12);
  }
}

TEST_CASE("line conditions for an exact copy and failed hypotheses")
{
  Rng rng(38);
  const auto fom = state_space_to_pole_residue(RandomIoSystem(rng, 2, 1, 1, 1), UnitBox(2));
  const ModelAtQ aux = build_aux_tf(fom);
  const std::vector<double> samples = {0.0, 0.5, 5.0};
  const auto reports = check_corollary_lines(aux, fom, samples);
  CHECK(reports.size() == fom.order() * (4 * samples.size() + 1));
  CHECK(max_rel_err(reports) <= 1e-12);

  // b1 = -b2 / 2 makes the first moment of b vanish.
  const auto one = ScalarParamFunction::constant(2);
  const auto q1 = ScalarParamFunction::coordinate(2, 0);
  PoleResidueMode m;
  m.lambda0 = -1.5;
  m.lambda_lin = CVector::Zero(2);
  m.residue = RankOneResidue{{{one, CVector::Constant(1, -0.5)}, {q1, CVector::Ones(1)}},
                             {{one, CVector::Ones(1)}}};
  const PoleResidueModel rom(2, 1, 1, {m});
  const auto skipped = check_corollary_lines(aux, rom, samples);
  REQUIRE_FALSE(skipped.empty());
  for (const auto &r : skipped)
  {
    CHECK(r.skipped);
    CHECK_FALSE(r.note.empty());
  }

  const auto mimo = state_space_to_pole_residue(RandomIoSystem(rng, 1, 0, 2, 1), UnitBox(2));
  CHECK_THROWS_AS(check_corollary_lines(build_aux_tf(mimo), mimo, samples), StructureError);
}

TEST_CASE("optimized io-form reduction satisfies the weighted and line conditions")
{
  const auto red = MakeIoReduction(40);
  const auto res = OptimizeIo(red);
  REQUIRE(res.converged);
  const ModelAtQ aux = build_aux_tf(red.fom);
  CHECK(max_rel_err(check_thm4(aux, res.rom)) <= 1e-6);
  const std::vector<double> samples = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 5.0};
  const auto lines = check_corollary_lines(aux, res.rom, samples);
  CHECK_FALSE(lines.empty());
  for (const auto &r : lines)
  {
    CHECK_FALSE(r.skipped);
  }
  CHECK(max_rel_err(lines) <= 1e-6);
  // The starting point does not satisfy them.
  CHECK(max_rel_err(check_corollary_lines(aux, red.init, samples)) >= 1e-3);
}
