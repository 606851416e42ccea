#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "coef_ode.hpp"
#include "test_util.hpp"
#include "uls/errors.hpp"
#include "uls/solver.hpp"

using namespace uls;
using namespace uls::testing;

namespace {

EquationSpec cubic(const DispersionSymbol& sym = make_schrodinger()) {
  EquationSpec eq;
  eq.sym = sym;
  eq.nl.Nl = {{cplx(0, -1), 2, 1}};
  return eq;
}

EquationSpec dnls() {
  EquationSpec eq;
  eq.sym = make_schrodinger();
  eq.nl.Q = {0, 1};
  return eq;
}

SolveConfig cfg_for(double T, std::size_t nodes = 21) {
  SolveConfig c;
  c.T = T;
  c.n_time_nodes = nodes;
  c.picard_tol = 1e-14;
  return c;
}

double h0_wiener(const TrigPoly& a, const TrigPoly& b) {
  return uls_norm_wiener_bound(tp_sub(a, b), 0.0, CutoffFamily{1.0, true});
}

}  // namespace

TEST(Picard, SingleModeClosedForm) {
  const auto m = z1();
  const auto u0 = mono(m, {1}, 0.1);
  const auto eq = cubic();
  const auto t0 = std::chrono::steady_clock::now();
  const auto tr = picard_solve(u0, eq, cfg_for(0.5));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_TRUE(tr.converged);
  double err = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    const cplx a = 0.1 * std::exp(-t * eq.sym(1.0)) * std::exp(cplx(0, -0.01 * t));
    err = std::max(err, tp_max_coef_diff(tr.states[k], mono(m, {1}, a)));
    EXPECT_EQ(tr.states[k].size(), 1u);
  }
  EXPECT_LT(err, 1e-8);
  EXPECT_LT(secs, 5.0);
  EXPECT_LE(tr.final_residual, 1e-14);
}

TEST(Picard, ZeroData) {
  const auto tr = picard_solve(TrigPoly(z2()), cubic(), cfg_for(0.3, 11));
  for (const auto& s : tr.states) EXPECT_TRUE(s.empty());
  EXPECT_TRUE(tr.converged);
}

TEST(Picard, NodeZeroIsData) {
  const auto u0 = tp_add(mono(z2(), {1, 0}, 0.1), mono(z2(), {0, 1}, 0.1));
  const auto tr = picard_solve(u0, cubic(), cfg_for(0.05, 5));
  EXPECT_EQ(tp_max_coef_diff(tr.states[0], u0), 0.0);
  EXPECT_EQ(tr.diag[0].t, 0.0);
}

TEST(Picard, TwoModeOdeOracle) {
  const auto u0 = tp_add(mono(z2(), {1, 0}, 0.1), mono(z2(), {0, 1}, 0.1));
  const auto eq = cubic();
  const auto tr = picard_solve(u0, eq, cfg_for(0.2));
  ASSERT_TRUE(tr.converged);
  for (std::size_t k : {std::size_t(10), tr.times.size() - 1}) {
    const auto ref = integrate_truncated(u0, eq, tr.times[k], 5);
    EXPECT_LT(h0_wiener(tr.states[k], ref), 1e-6) << "t=" << tr.times[k];
  }
}

TEST(Picard, RejectsDerivativeNonlinearity) {
  EXPECT_THROW(picard_solve(mono(z1(), {1}, 0.1), dnls(), cfg_for(0.1)), Error);
}

TEST(Picard, NoContractionAndHalving) {
  const auto u0 = mono(z1(), {1}, 3.0);
  auto c = cfg_for(2.0, 11);
  c.picard_max_iters = 30;
  c.max_halvings = 0;
  try {
    picard_solve(u0, cubic(), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoContraction);
  }
  c.max_halvings = 8;
  const auto tr = solve_with_time_search(u0, cubic(), c);
  EXPECT_TRUE(tr.converged);
  EXPECT_GT(tr.halvings, 0);
  EXPECT_LT(tr.T_achieved, tr.T_requested);
  EXPECT_DOUBLE_EQ(tr.T_achieved, 2.0 / std::exp2(tr.halvings));
}

TEST(Picard, SimpsonOrder) {
  const auto u0 = tp_add(mono(z2(), {1, 0}, 0.3), mono(z2(), {0, 1}, cplx(0, 0.3)));
  const auto eq = cubic();
  auto fin = [&](std::size_t n) {
    auto c = cfg_for(0.2, n);
    c.prune_floor = 1e-16;
    return picard_solve(u0, eq, c).states.back();
  };
  const auto a = fin(5), b = fin(9), c = fin(17);
  const double d1 = h0_wiener(a, b), d2 = h0_wiener(b, c);
  EXPECT_GT(d1 / d2, 10.0) << d1 << " " << d2;
}

TEST(Picard, PruneBudgetAndEffect) {
  const auto u0 = tp_add(mono(z2(), {1, 0}, 0.5), mono(z2(), {0, 1}, 0.5));
  auto c = cfg_for(0.1, 11);
  const auto full = picard_solve(u0, cubic(), c);
  c.prune_floor = 1e-14;
  const auto pr = picard_solve(u0, cubic(), c);
  EXPECT_GT(pr.dropped_mass, 0.0);
  EXPECT_TRUE(pr.converged);
  EXPECT_LE(pr.states.back().size(), full.states.back().size());
  double worst = 0.0;
  for (std::size_t k = 0; k < full.states.size(); ++k) worst = std::max(worst, h0_wiener(full.states[k], pr.states[k]));
  EXPECT_LT(worst, 1e-10);
  // an absurd floor blows the dropped-mass budget
  c.prune_floor = 1e-3;
  EXPECT_FALSE(picard_solve(u0, cubic(), c).converged);
}

TEST(Picard, RealityPreserved) {
  EquationSpec eq;
  eq.sym = make_airy();
  eq.nl.reality = true;
  eq.nl.Nl = {{cplx(1.0), 2, 0}};
  eq.nl.Q = {0, 1};
  const auto u0 = tp_scale(cos_cos(), 0.2);
  auto c = cfg_for(0.05, 11);
  c.prune_floor = 1e-15;
  const auto tr = galerkin_solve(u0, eq, 64, c);
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(0.37 * i);
  for (const auto& s : tr.states)
    for (auto v : tp_eval(s, xs)) EXPECT_LE(std::abs(v.imag()), 1e-10);
  EquationSpec bad = eq;
  bad.sym = make_schrodinger();
  EXPECT_THROW(galerkin_solve(u0, bad, 64, c), Error);
  bad = eq;
  bad.nl.Nl = {{cplx(1.0), 1, 1}};
  EXPECT_THROW(galerkin_solve(u0, bad, 64, c), Error);
}

TEST(Galerkin, MatchesPicardWhenQZero) {
  const auto u0 = tp_add(mono(z2(), {1, 0}, 0.2), mono(z2(), {0, 1}, 0.1));
  const auto c = cfg_for(0.1, 11);
  const auto a = picard_solve(u0, cubic(), c), b = galerkin_solve(u0, cubic(), 16, c);
  for (std::size_t k = 0; k < a.states.size(); ++k) EXPECT_EQ(tp_max_coef_diff(a.states[k], b.states[k]), 0.0);
}

TEST(Galerkin, FlatRegionOfRegularisation) {
  NonlinearitySpec nl;
  nl.Q = {0, 1};
  const auto u = mono(z1(), {1}, 0.5);
  for (Dyadic M : {2u, 8u, 64u}) EXPECT_EQ(tp_max_coef_diff(tp_nonlinearity(u, nl, M), tp_nonlinearity(u, nl)), 0.0);
}

TEST(Galerkin, DnlsOdeOracle) {
  const auto m = z1();
  const auto u0 = tp_add(mono(m, {1}, 0.05), mono(m, {2}, 0.05));
  const auto eq = dnls();
  const auto tr = galerkin_solve(u0, eq, 64, cfg_for(0.05));
  ASSERT_TRUE(tr.converged);
  const auto ref = integrate_truncated(u0, eq, 0.05, 12);
  EXPECT_LT(h0_wiener(tr.states.back(), ref), 1e-6);
}

TEST(Galerkin, IndependentOfLargeM) {
  const auto m = z1();
  const auto u0 = tp_add(mono(m, {1}, 0.05), mono(m, {2}, 0.05));
  auto c = cfg_for(0.05, 11);
  c.prune_floor = 1e-18;
  const auto a = galerkin_solve(u0, dnls(), 256, c), b = galerkin_solve(u0, dnls(), 512, c);
  for (std::size_t k = 0; k < a.states.size(); ++k) EXPECT_LT(h0_wiener(a.states[k], b.states[k]), 1e-10);
}

TEST(Cauchy, TrivialCases) {
  const auto m = z1();
  const auto u0 = tp_add(mono(m, {1}, 0.05), mono(m, {2}, 0.05));
  auto c = cfg_for(0.02, 5);
  c.M_list = {16, 32, 64};
  NormOptions o;
  o.scan_length = 64;
  const auto fam = CutoffFamily::for_symbol(make_schrodinger());
  for (const auto& r : galerkin_cauchy_study(u0, cubic(), c, fam, o)) EXPECT_EQ(r.sup_diff, 0.0);
  c.M_list = {1024, 2048, 4096};
  c.prune_floor = 1e-18;
  for (const auto& r : galerkin_cauchy_study(u0, dnls(), c, fam, o)) EXPECT_LT(r.sup_diff, 1e-12);
  c.M_list = {16, 32};
  EXPECT_THROW(galerkin_cauchy_study(u0, dnls(), c, fam, o), Error);
}

TEST(Cauchy, WideBandDecreases) {
  const double L = 1024.0 / (2 * M_PI);
  GridField g = gf_random_bandlimited(11, L, 8192, 0.0, 20.0, {AmplitudeLaw::Kind::Power, 3.0, 1.0});
  g = gf_scale(g, 0.3 / g.wiener_norm());
  auto c = cfg_for(0.02, 11);
  c.picard_tol = 1e-12;
  c.backend = Backend::Grid;
  c.M_list = {4, 8, 16, 32};
  NormOptions o;
  const auto rows = galerkin_cauchy_study(g, dnls(), c, CutoffFamily::for_symbol(make_schrodinger()), o);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].sup_diff, rows[i - 1].sup_diff);
}

TEST(ApCheck, CosCosCubic) {
  auto c = cfg_for(0.05, 11);
  c.prune_floor = 1e-14;
  const auto r = ap_propagation_check(cos_cos(), cubic(), c);
  EXPECT_TRUE(r.contained);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_EQ(r.spectrum_growth.size(), 11u);
  EXPECT_GT(r.spectrum_growth.back(), 4u);
  for (const auto& s : r.trajectory.states) EXPECT_TRUE(tp_span_contains(cos_cos().module(), s));
}

TEST(ApCheck, LinearAndSingleMode) {
  EquationSpec lin;
  lin.sym = make_airy();
  const auto r = ap_propagation_check(cos_cos(), lin, cfg_for(0.5, 5));
  for (auto n : r.spectrum_growth) EXPECT_EQ(n, 4u);
  const auto s = ap_propagation_check(mono(z1(), {1}, 0.1), cubic(), cfg_for(0.1, 5));
  for (const auto& st : s.trajectory.states) EXPECT_EQ(tp_spectrum(st), (std::set<FreqVec>{FreqVec{1}}));
}

TEST(EquationJson, RoundTrip) {
  auto eq = dnls();
  eq.nl.Nl = {{cplx(0.5, -1), 2, 1}};
  eq.s = 1.5;
  const auto back = equation_from_json(equation_to_json(eq));
  EXPECT_EQ(back.sym.name, "schrodinger");
  EXPECT_EQ(back.nl.Q, eq.nl.Q);
  ASSERT_EQ(back.nl.Nl.size(), 1u);
  EXPECT_EQ(back.nl.Nl[0].coef, eq.nl.Nl[0].coef);
  EXPECT_EQ(back.s, 1.5);
  EXPECT_THROW(equation_from_json({{"symbol", "nope"}}), Error);
}
