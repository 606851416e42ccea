#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "test_util.hpp"
#include "uls/errors.hpp"
#include "uls/gridfield.hpp"
#include "uls/lp_calculus.hpp"

using namespace uls;
using namespace uls::testing;

namespace {

double max_sample_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<cplx> sample(const TrigPoly& u, const GridField& g) {
  std::vector<double> xs;
  for (std::size_t j = 0; j < g.size(); ++j) xs.push_back(g.x(j));
  return tp_eval(u, xs);
}

}  // namespace

TEST(GridField, FromTrigExactFrequency) {
  const auto r = gf_from_trigpoly(mono(z1(), {1}), 1.0, 64);
  EXPECT_EQ(r.max_rounding_error, 0.0);
  for (std::size_t i = 0; i < r.field.size(); ++i) {
    const double want = r.field.index(i) == 1 ? 1.0 : 0.0;
    EXPECT_NEAR(std::abs(r.field.coefficients()[i]), want, 1e-12);
  }
}

TEST(GridField, FromTrigRounded) {
  const auto r = gf_from_trigpoly(mono(FrequencyModule({std::sqrt(2.0)}), {1}), 64.0, 1024);
  EXPECT_NEAR(r.max_rounding_error, std::abs(std::sqrt(2.0) - 91.0 / 64.0), 1e-15);
  std::size_t best = 0;
  for (std::size_t i = 0; i < r.field.size(); ++i)
    if (std::abs(r.field.coefficients()[i]) > std::abs(r.field.coefficients()[best])) best = i;
  EXPECT_EQ(r.field.index(best), 91);
}

TEST(GridField, ZeroAndRangeErrors) {
  const auto r = gf_from_trigpoly(TrigPoly(z1()), 2.0, 32);
  EXPECT_EQ(r.field.wiener_norm(), 0.0);
  try {
    gf_from_trigpoly(mono(z1(), {100}), 1.0, 64);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FrequencyOutOfRange);
  }
  EXPECT_THROW(GridField(1.0, 48), Error);
  try {
    gf_mul(GridField(1.0, 32), GridField(2.0, 32));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(GridField, DerivativeAndIdentityMultiplier) {
  const auto f = gf_from_trigpoly(mono(z1(), {1}), 1.0, 64).field;
  const auto d = gf_derivative(f);
  const auto want = sample(mono(z1(), {1}, cplx(0, 1)), f);
  EXPECT_LE(max_sample_diff(d.samples(), want), 1e-12);
  const auto id = gf_multiplier(f, [](double) { return cplx(1.0); });
  EXPECT_LE(max_sample_diff(id.samples(), f.samples()), 1e-15);
}

TEST(GridField, ProductNoAliasing) {
  const auto m = z1();
  const auto f = gf_from_trigpoly(mono(m, {1}), 1.0, 8).field;
  const auto g = gf_from_trigpoly(mono(m, {2}), 1.0, 8).field;
  // e^{3ix} fits on 8 points (Nyquist 4)
  const auto p = gf_mul(f, g);
  EXPECT_LE(max_sample_diff(p.samples(), sample(tp_mul(mono(m, {1}), mono(m, {2})), p)), 1e-12);
}

TEST(GridField, RoundTrip) {
  const auto g = gf_random_bandlimited(1, 8.0, 512, 0.0, 20.0);
  const auto back = GridField::from_coefficients(g.L(), {g.coefficients().begin(), g.coefficients().end()});
  double scale = 0.0;
  for (auto s : g.samples()) scale = std::max(scale, std::abs(s));
  EXPECT_LE(max_sample_diff(back.samples(), g.samples()), 1e-12 * scale);
  const auto again = GridField::from_samples(g.L(), {g.samples().begin(), g.samples().end()});
  EXPECT_LE(max_sample_diff(again.coefficients(), g.coefficients()), 1e-12 * scale);
}

TEST(GridField, RandomBandlimited) {
  const auto a = gf_random_bandlimited(42, 16.0, 1024, 4.0, 8.0);
  const auto b = gf_random_bandlimited(42, 16.0, 1024, 4.0, 8.0);
  EXPECT_EQ(max_sample_diff(a.samples(), b.samples()), 0.0);
  const auto c = gf_random_bandlimited(43, 16.0, 1024, 4.0, 8.0);
  EXPECT_GT(max_sample_diff(a.samples(), c.samples()), 0.0);
  EXPECT_EQ(project(32, a).wiener_norm(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double xi = std::abs(a.frequency(i));
    if (xi < 4.0 || xi > 8.0) EXPECT_EQ(a.coefficients()[i], cplx(0.0));
  }
  EXPECT_THROW(gf_random_bandlimited(1, 1.0, 64, 0.0, 40.0), Error);
}

TEST(GridField, Plancherel) {
  const auto g = gf_random_bandlimited(7, 4.0, 256, 0.0, 10.0, {AmplitudeLaw::Kind::Power, 1.0, 1.0});
  // trapezoid over samples is exact for trig polynomials below Nyquist
  double s = 0.0;
  for (auto v : g.samples()) s += std::norm(v);
  const double by_samples = s * g.period() / double(g.size());
  EXPECT_NEAR(gf_energy(g), by_samples, 1e-10 * by_samples);
  double c = 0.0;
  for (auto v : g.coefficients()) c += std::norm(v);
  EXPECT_NEAR(gf_energy(g), c * 2 * M_PI * g.L(), 1e-10 * by_samples);
}

TEST(GridField, AgreesWithTrigBackend) {
  std::mt19937_64 rng(11);
  const auto m = z1();
  for (int trial = 0; trial < 5; ++trial) {
    std::uniform_int_distribution<int> k(-6, 6);
    std::vector<Term> ts, vs;
    for (int i = 0; i < 5; ++i) ts.push_back({FreqVec{k(rng)}, cplx(1.0 / (i + 1), 0.3 * i)});
    for (int i = 0; i < 4; ++i) vs.push_back({FreqVec{k(rng)}, cplx(0.2 * i, 1.0)});
    const TrigPoly u(m, ts), v(m, vs);
    const auto gu = gf_from_trigpoly(u, 1.0, 64).field;
    const auto gv = gf_from_trigpoly(v, 1.0, 64).field;
    EXPECT_LE(max_sample_diff(gf_derivative(gu).samples(), sample(tp_derivative(u), gu)), 1e-10);
    auto mult = [](double xi) { return cplx(psi(4, xi)); };
    EXPECT_LE(max_sample_diff(gf_multiplier(gu, mult).samples(), sample(tp_multiplier(u, mult), gu)), 1e-10);
    EXPECT_LE(max_sample_diff(gf_mul(gu, gv).samples(), sample(tp_mul(u, v), gu)), 1e-10);
  }
}

TEST(GridField, UpDownSample) {
  const auto g = gf_random_bandlimited(3, 2.0, 64, 0.0, 6.0);
  const auto fine = gf_upsample(g, 4);
  ASSERT_EQ(fine.size(), 256u);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(std::abs(fine[4 * j] - g.samples()[j]), 0.0, 1e-12);
  const auto back = gf_downsample(g.L(), fine, 64);
  EXPECT_LE(max_sample_diff(back.samples(), g.samples()), 1e-12);
}

TEST(GridField, BinaryDump) {
  const auto g = gf_random_bandlimited(9, 3.0, 128, 1.0, 15.0);
  const auto path = (std::filesystem::temp_directory_path() / "uls_gf_dump.bin").string();
  gf_write_binary(g, path);
  ASSERT_TRUE(std::filesystem::exists(path + ".json"));
  const auto h = gf_read_binary(path);
  EXPECT_EQ(h.L(), g.L());
  EXPECT_EQ(max_sample_diff(h.samples(), g.samples()), 0.0);
  EXPECT_EQ(std::filesystem::file_size(path), 128u * 16u);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}
