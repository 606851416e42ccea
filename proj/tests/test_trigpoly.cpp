#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "uls/errors.hpp"
#include "uls/lp_calculus.hpp"
#include "uls/polynomial.hpp"

using namespace uls;
using namespace uls::testing;

namespace {

const double kSqrt2 = std::sqrt(2.0);

bool same_terms(const TrigPoly& a, const TrigPoly& b, double tol) {
  return tp_max_coef_diff(a, b) <= tol;
}

}  // namespace

TEST(Module, RejectsBadGenerators) {
  EXPECT_THROW(FrequencyModule({}), Error);
  EXPECT_THROW(FrequencyModule({1.0, 0.0}), Error);
  try {
    FrequencyModule({1.0, 1.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RationallyDependent);
  }
  try {
    FrequencyModule({1.0, kSqrt2, 1.0 + 2.0 * kSqrt2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RationallyDependent);
  }
  EXPECT_NO_THROW(FrequencyModule({1.0, kSqrt2, std::sqrt(3.0)}));
}

TEST(TrigPolyOps, Add) {
  const auto m = z1();
  const auto e = mono(m, {1});
  EXPECT_EQ(tp_add(e, e).coefficient({1}), cplx(2.0));
  const auto u = cos_cos();
  EXPECT_TRUE(same_terms(tp_add(u, TrigPoly(u.module())), u, 0.0));
  const auto cc = tp_add(TrigPoly(z2(), {{FreqVec{1, 0}, 0.5}, {FreqVec{-1, 0}, 0.5}}),
                         TrigPoly(z2(), {{FreqVec{0, 1}, 0.5}, {FreqVec{0, -1}, 0.5}}));
  EXPECT_EQ(cc.size(), 4u);
  std::vector<double> freqs;
  for (const auto& t : cc.terms()) {
    EXPECT_EQ(t.coef, cplx(0.5));
    freqs.push_back(cc.frequency(t));
  }
  std::sort(freqs.begin(), freqs.end());
  EXPECT_DOUBLE_EQ(freqs[0], -kSqrt2);
  EXPECT_DOUBLE_EQ(freqs[1], -1.0);
  EXPECT_DOUBLE_EQ(freqs[2], 1.0);
  EXPECT_DOUBLE_EQ(freqs[3], kSqrt2);
}

TEST(TrigPolyOps, ModuleMismatch) {
  try {
    tp_add(mono(z1(), {1}), mono(z2(), {1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModuleMismatch);
  }
  EXPECT_THROW(tp_mul(mono(z1(), {1}), mono(z2(), {1, 0})), Error);
}

TEST(TrigPolyOps, Multiply) {
  const auto m = z2();
  const auto p = tp_mul(mono(m, {1, 0}), mono(m, {0, 1}));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.terms()[0].key, (FreqVec{1, 1}));
  EXPECT_DOUBLE_EQ(p.frequency(p.terms()[0]), 1.0 + kSqrt2);

  const auto c = TrigPoly(z1(), {{FreqVec{1}, 0.5}, {FreqVec{-1}, 0.5}});
  const auto c2 = tp_mul(c, c);
  EXPECT_EQ(c2.size(), 3u);
  EXPECT_DOUBLE_EQ(c2.coefficient({0}).real(), 0.5);
  EXPECT_DOUBLE_EQ(c2.coefficient({2}).real(), 0.25);
  EXPECT_DOUBLE_EQ(c2.coefficient({-2}).real(), 0.25);

  const auto u = cos_cos();
  EXPECT_TRUE(same_terms(tp_mul(u, TrigPoly::constant(u.module(), 1.0)), u, 0.0));
}

TEST(TrigPolyOps, ConjDerivativeMultiplier) {
  const auto m = z2();
  const auto cj = tp_conj(mono(m, {1, 0}));
  EXPECT_EQ(cj.terms()[0].key, (FreqVec{-1, 0}));
  const auto d = tp_derivative(mono(m, {0, 1}));
  EXPECT_NEAR(std::abs(d.coefficient({0, 1}) - cplx(0, kSqrt2)), 0.0, 1e-15);
  const auto z = tp_multiplier(TrigPoly::monomial(FrequencyModule({0.3}), {1}, 1.0),
                               [](double xi) { return cplx(psi(2, xi)); });
  EXPECT_TRUE(z.empty());
}

TEST(TrigPolyOps, NonlinearitySingleMode) {
  const auto m = z1();
  const double eps = 0.1;
  for (double sign : {1.0, -1.0}) {
    NonlinearitySpec nl;
    nl.Nl = {{cplx(0, sign), 2, 1}};
    const auto out = tp_nonlinearity(mono(m, {1}, eps), nl);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_NEAR(std::abs(out.coefficient({1}) - cplx(0, sign * eps * eps * eps)), 0.0, 1e-18);
    EXPECT_TRUE(tp_nonlinearity(TrigPoly(m), nl).empty());
  }
  NonlinearitySpec q;
  q.Q = {0, 1};
  const auto u = tp_add(mono(z2(), {1, 0}), mono(z2(), {0, 1}));
  const auto out = tp_nonlinearity(u, q);
  EXPECT_FALSE(out.empty());
  EXPECT_TRUE(tp_span_contains(u.module(), out));
}

TEST(TrigPolyOps, Prune) {
  const auto m = z2();
  const auto u = tp_add(mono(m, {1, 0}), mono(m, {0, 1}, 1e-15));
  const auto same = tp_prune(u, 0.0);
  EXPECT_EQ(same.dropped_mass, 0.0);
  EXPECT_EQ(same.poly.size(), 2u);
  const auto r = tp_prune(u, 1e-12);
  EXPECT_EQ(r.poly.size(), 1u);
  EXPECT_DOUBLE_EQ(r.dropped_mass, 1e-15);
  EXPECT_THROW(tp_prune(u, -1.0), Error);
}

TEST(TrigPolyOps, Spectrum) {
  const auto s = tp_spectrum(cos_cos());
  const std::set<FreqVec> want{FreqVec{1, 0}, FreqVec{-1, 0}, FreqVec{0, 1}, FreqVec{0, -1}};
  EXPECT_EQ(s, want);
  EXPECT_TRUE(tp_spectrum(TrigPoly(z2())).empty());
}

TEST(TrigPolyOps, SpanAcrossModules) {
  // Z[1, sqrt2] contains Z[sqrt2], not Z[sqrt3]
  const auto sub = mono(FrequencyModule({kSqrt2}), {3});
  EXPECT_TRUE(tp_span_contains(z2(), sub));
  EXPECT_FALSE(tp_span_contains(z2(), mono(FrequencyModule({std::sqrt(3.0)}), {1})));
  EXPECT_FALSE(tp_span_contains(z1(), mono(z2(), {0, 1})));
}

TEST(TrigPolyOps, Eval) {
  const auto c = TrigPoly(z1(), {{FreqVec{1}, 0.5}, {FreqVec{-1}, 0.5}});
  EXPECT_NEAR(std::abs(tp_eval(c, 0.0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(tp_eval(mono(z1(), {1}), M_PI) + 1.0), 0.0, 1e-15);
  const auto v = tp_eval(cos_cos(), 1.0);
  EXPECT_NEAR(v.real(), std::cos(1.0) + std::cos(kSqrt2), 1e-14);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(TrigPolyProps, MulCommutativeAssociative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_poly(rng, 6, 4), b = random_poly(rng, 6, 4), c = random_poly(rng, 6, 4);
    const auto ab = tp_mul(a, b);
    EXPECT_EQ(tp_spectrum(ab), tp_spectrum(tp_mul(b, a)));
    EXPECT_LE(tp_max_coef_diff(ab, tp_mul(b, a)), 1e-12);
    EXPECT_LE(tp_max_coef_diff(tp_mul(ab, c), tp_mul(a, tp_mul(b, c))), 1e-12 * (1 + tp_mul(ab, c).wiener_norm()));
  }
}

TEST(TrigPolyProps, ConjInvolution) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_poly(rng, 10, 6);
    const auto back = tp_conj(tp_conj(a));
    ASSERT_EQ(back.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(back.terms()[i].key, a.terms()[i].key);
      EXPECT_EQ(back.terms()[i].coef, a.terms()[i].coef);
    }
  }
}

TEST(TrigPolyProps, SpectrumClosure) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_poly(rng, 5, 3), b = random_poly(rng, 5, 3);
    auto r = tp_mul(tp_derivative(a), tp_conj(b));
    r = tp_add(r, tp_multiplier(a, [](double xi) { return cplx(psi(2, xi)); }));
    r = tp_mul(r, r);
    EXPECT_TRUE(tp_span_contains(a.module(), r));
  }
}

TEST(TrigPolyProps, LeibnizRule) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_poly(rng, 8, 5), b = random_poly(rng, 8, 5);
    const auto lhs = tp_derivative(tp_mul(a, b));
    const auto rhs = tp_add(tp_mul(tp_derivative(a), b), tp_mul(a, tp_derivative(b)));
    EXPECT_LE(tp_max_coef_diff(lhs, rhs), 1e-12 * (1 + lhs.wiener_norm()));
  }
}

TEST(TrigPolyIo, JsonRoundTrip) {
  std::mt19937_64 rng(8);
  const auto a = random_poly(rng, 7, 5);
  const auto b = tp_from_json(tp_to_json(a));
  EXPECT_EQ(b.module(), a.module());
  EXPECT_EQ(tp_max_coef_diff(a, b), 0.0);
  nlohmann::json bad = tp_to_json(a);
  bad["terms"][0]["n"] = {1, 2, 3};
  EXPECT_THROW(tp_from_json(bad), Error);
}
