#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "uls/errors.hpp"
#include "uls/norms.hpp"

using namespace uls;
using namespace uls::testing;

namespace {

TrigPoly wave(double lambda, cplx c = 1.0) { return TrigPoly::monomial(FrequencyModule({lambda}), {1}, c); }

// ||chi_{y,N} u||_{L^2}^2 by trapezoid quadrature in x; the integrand is
// smooth and compactly supported, so this converges fast.
double window_l2_sq(const TrigPoly& u, double y, Dyadic N, const CutoffFamily& fam, int n = 4000) {
  const double S = fam.scale(N);
  const double a = y - 0.75 * S, b = y + 0.75 * S, h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    const double w = fam.window(x, y, N);
    s += std::norm(w * tp_eval(u, x));
  }
  return s * h;
}

double chi_l2_direct(const CutoffFamily& fam) {
  const int n = 200000;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -0.75 + 1.5 * i / n;
    s += std::pow(fam.profile(x), 2);
  }
  return std::sqrt(s * 1.5 / n);
}

}  // namespace

TEST(Cutoff, PartitionOfUnity) {
  for (double sigma : {1.0, 2.0}) {
    const CutoffFamily fam{sigma, true};
    for (Dyadic N : {1u, 2u, 8u}) {
      for (double x = -3.0; x <= 3.0; x += 0.013) {
        double s = 0.0;
        const double S = fam.scale(N);
        for (int j = -20; j <= 20; ++j) s += fam.window(x, j * S, N);
        EXPECT_NEAR(s, 1.0, 1e-12);
      }
    }
  }
}

TEST(Cutoff, L2NormAndPlaneWaveValue) {
  const CutoffFamily fam{1.0, true};
  EXPECT_NEAR(fam.l2_norm(), chi_l2_direct(fam), 1e-9);
  const CutoffFamily fam2{2.0, true};
  EXPECT_NEAR(fam2.plane_wave_value(8), 8.0 * fam2.l2_norm(), 1e-12);
}

TEST(WindowedNorm, PlaneWave) {
  for (double sigma : {1.0, 2.0}) {
    const CutoffFamily fam{sigma, true};
    for (double lambda : {0.3, 1.0, 7.5, 64.0})
      for (Dyadic N : {1u, 4u, 16u}) {
        const auto w = windowed_norm(wave(lambda, std::polar(1.0, 0.4)), N, fam);
        EXPECT_NEAR(w.value, fam.plane_wave_value(N), 1e-10 * fam.plane_wave_value(N));
        EXPECT_NEAR(w.certified_gap, 0.0, 1e-10);
      }
  }
  EXPECT_EQ(windowed_norm(TrigPoly(z1()), 4, CutoffFamily{1.0, true}).value, 0.0);
}

TEST(WindowedNorm, MatchesDirectQuadrature) {
  std::mt19937_64 rng(1);
  const CutoffFamily fam{1.0, true};
  NormOptions o;
  o.scan_length = 40.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = random_poly(rng, 6, 3);
    for (Dyadic N : {1u, 4u}) {
      const auto w = windowed_norm(u, N, fam, o);
      // value is attained at w.center
      EXPECT_NEAR(w.value * w.value, window_l2_sq(u, w.center, N, fam), 1e-8 * (1 + w.value * w.value));
      // brute-force scan never beats value + gap
      double best = 0.0;
      for (double y = 0.0; y <= 40.0; y += 0.05) best = std::max(best, window_l2_sq(u, y, N, fam, 1500));
      EXPECT_LE(std::sqrt(best), w.value + w.certified_gap + 1e-8);
      EXPECT_GE(w.value, std::sqrt(best) * (1 - 1e-3));
    }
  }
}

TEST(WindowedNorm, GridMatchesTrig) {
  // e^{ix} + 0.5 e^{3ix}: one period of the trig scan equals the torus scan on L = 1... scaled up
  const auto m = z1();
  const auto u = TrigPoly(m, {{FreqVec{1}, 1.0}, {FreqVec{3}, 0.5}, {FreqVec{-2}, cplx(0, 0.3)}});
  const CutoffFamily fam{1.0, true};
  const auto g = gf_from_trigpoly(u, 8.0, 512).field;  // period 16 pi, all frequencies exact
  for (Dyadic N : {1u, 2u, 4u}) {
    const auto a = windowed_norm(u, N, fam), b = windowed_norm(g, N, fam);
    EXPECT_NEAR(a.value, b.value, 1e-8 * a.value) << N;
  }
}

TEST(WindowedNorm, WindowExceedsTorus) {
  const auto g = gf_random_bandlimited(1, 1.0, 64, 0.0, 4.0);
  try {
    windowed_norm(g, 8, CutoffFamily{1.0, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowExceedsTorus);
  }
}

TEST(UlsNorm, SingleLowMode) {
  const auto s = make_schrodinger();
  const auto fam = CutoffFamily::for_symbol(s);
  for (double ss : {0.0, 1.0, 2.5}) {
    const auto r = uls_norm(wave(0.3), ss, s, fam);
    EXPECT_NEAR(r.value, fam.l2_norm(), 1e-10);
    for (const auto& [N, b] : r.per_block)
      if (N > 1) EXPECT_EQ(b.value, 0.0);
  }
}

TEST(UlsNorm, LowModesAgree) {
  const auto s = make_airy();
  const auto fam = CutoffFamily::for_symbol(s);
  const double ref = uls_norm(wave(0.25), 1.0, s, fam).value;
  for (double lam : {0.3, 0.4, 0.5, -0.45}) EXPECT_NEAR(uls_norm(wave(lam), 1.0, s, fam).value, ref, 1e-10);
}

TEST(UlsNorm, TwoSeparatedModes) {
  for (const auto& sym : {make_schrodinger(), make_airy()}) {
    const auto fam = CutoffFamily::for_symbol(sym);
    const FrequencyModule m({0.3, 64.0});
    const auto u = TrigPoly(m, {{FreqVec{1, 0}, 1.0}, {FreqVec{0, 1}, 1.0}});
    const auto r = uls_norm(u, 1.0, sym, fam);
    // psi_64(64) = 1 and psi_128(64) = 0, so block 64 carries the whole high wave
    const double hi = 64.0 * fam.plane_wave_value(64) * psi(64, 64.0);
    const double want = std::sqrt(std::pow(fam.l2_norm(), 2) + hi * hi);
    EXPECT_NEAR(r.value, want, 1e-9 * want) << sym.name;
  }
}

TEST(UlsNorm, BlockSumAndMonotoneInS) {
  std::mt19937_64 rng(2);
  const auto sym = make_schrodinger();
  const auto fam = CutoffFamily::for_symbol(sym);
  NormOptions o;
  o.scan_length = 64.0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto u = random_poly(rng, 8, 10);
    double prev = 0.0;
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
      const auto r = uls_norm(u, s, sym, fam, o);
      double sum = 0.0;
      for (const auto& [N, b] : r.per_block) sum += std::pow(std::pow(double(N), s) * b.value, 2);
      EXPECT_NEAR(r.value * r.value, sum, 1e-12 * sum);
      EXPECT_GE(r.value, prev);
      EXPECT_TRUE(std::isfinite(r.certified_gap));
      prev = r.value;
    }
  }
}

TEST(UlsNorm, RejectsNegativeS) {
  const auto sym = make_schrodinger();
  EXPECT_THROW(uls_norm(wave(1.0), -1.0, sym, CutoffFamily::for_symbol(sym)), Error);
}

TEST(Variants, PlaneWaveAndZero) {
  const auto sym = make_schrodinger();
  const auto fam = CutoffFamily::for_symbol(sym);
  const auto v = equiv_norm_variants(wave(5.0), 1.0, sym, fam);
  for (const char* k : {"lattice", "translation", "mollified_cutoff", "fattened_projection"})
    ASSERT_TRUE(v.count(k)) << k;
  EXPECT_NEAR(v.at("lattice"), v.at("translation"), 1e-10 * v.at("translation"));
  for (const auto& [k, x] : equiv_norm_variants(TrigPoly(z1()), 1.0, sym, fam)) EXPECT_EQ(x, 0.0) << k;
}

TEST(Variants, FattenedWithinFactorThree) {
  const auto sym = make_schrodinger();
  const auto fam = CutoffFamily::for_symbol(sym);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto g = gf_random_bandlimited(seed, 64.0, 4096, 0.0, 20.0);
    const auto v = equiv_norm_variants(g, 1.0, sym, fam);
    const double r = v.at("fattened_projection") / v.at("translation");
    EXPECT_GE(r, 1.0 / 3.0);
    EXPECT_LE(r, 3.0);
  }
}

TEST(WienerBound, DominatesNorm) {
  std::mt19937_64 rng(3);
  const auto sym = make_schrodinger();
  const auto fam = CutoffFamily::for_symbol(sym);
  NormOptions o;
  o.scan_length = 64.0;
  for (int trial = 0; trial < 4; ++trial) {
    const auto u = random_poly(rng, 8, 8);
    const auto r = uls_norm(u, 1.0, sym, fam, o);
    EXPECT_GE(uls_norm_wiener_bound(u, 1.0, fam) * (1 + 1e-12), r.value);
  }
}

TEST(CkNorm, Cosines) {
  const auto c = TrigPoly(z1(), {{FreqVec{1}, 0.5}, {FreqVec{-1}, 0.5}});
  EXPECT_NEAR(ck_norm(c, 0), 1.0, 1e-9);
  EXPECT_NEAR(ck_norm(c, 1), 2.0, 1e-9);
  SupOptions o;
  o.window = 1e4;
  const double v = ck_norm(cos_cos(), 0, o);
  EXPECT_LE(v, 2.0);
  EXPECT_GT(v, 2.0 - 1e-3);
  const auto e = sup_norm(cos_cos(), 0, o);
  EXPECT_LE(e.value + e.gap, 2.0 + 1e-9 + e.gap);
  EXPECT_THROW(ck_norm(c, -1), Error);
}

TEST(CkNorm, GridSup) {
  const auto g = gf_from_trigpoly(TrigPoly(z1(), {{FreqVec{2}, 0.5}, {FreqVec{-2}, 0.5}}), 1.0, 64).field;
  EXPECT_NEAR(ck_norm(g, 1), 3.0, 1e-9);
}
