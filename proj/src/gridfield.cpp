#include "uls/gridfield.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "json.hpp"
#include "uls/errors.hpp"
#include "uls/fft.hpp"

namespace uls {
namespace {

void require_pow2(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "n_points must be a power of two >= 2");
}

void require_same(const GridField& f, const GridField& g) {
  if (f.L() != g.L() || f.size() != g.size())
    throw Error(ErrorCode::GridMismatch, "grid fields differ in L or n_points");
}

std::vector<cplx> coeffs_of(std::span<const cplx> samples) {
  auto c = fft::forward(samples);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& v : c) v *= inv;
  return c;
}

}  // namespace

GridField::GridField(double L, std::size_t n_points)
    : L_(L), samples_(n_points), coeffs_(n_points) {
  require_pow2(n_points);
  if (!(L > 0)) throw Error(ErrorCode::InvalidArgument, "L must be positive");
}

GridField::GridField(double L, std::vector<cplx> samples, std::vector<cplx> coeffs)
    : L_(L), samples_(std::move(samples)), coeffs_(std::move(coeffs)) {}

GridField GridField::from_samples(double L, std::vector<cplx> samples) {
  require_pow2(samples.size());
  if (!(L > 0)) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  auto c = coeffs_of(samples);
  return GridField(L, std::move(samples), std::move(c));
}

GridField GridField::from_coefficients(double L, std::vector<cplx> coeffs) {
  require_pow2(coeffs.size());
  if (!(L > 0)) throw Error(ErrorCode::InvalidArgument, "L must be positive");
  auto s = fft::backward(coeffs);
  return GridField(L, std::move(s), std::move(coeffs));
}

long long GridField::index(std::size_t slot) const { return fft::signed_index(slot, size()); }

double GridField::x(std::size_t j) const {
  return 2.0 * std::numbers::pi * L_ * static_cast<double>(j) / static_cast<double>(size());
}

double GridField::period() const { return 2.0 * std::numbers::pi * L_; }

double GridField::max_abs_frequency(double rel) const {
  double top = 0.0;
  for (auto c : coeffs_) top = std::max(top, std::abs(c));
  if (top == 0.0) return 0.0;
  double m = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (std::abs(coeffs_[i]) > rel * top) m = std::max(m, std::abs(frequency(i)));
  return m;
}

double GridField::wiener_norm() const {
  double s = 0.0;
  for (auto c : coeffs_) s += std::abs(c);
  return s;
}

GridConversion gf_from_trigpoly(const TrigPoly& u, double L, std::size_t n_points) {
  GridField zero(L, n_points);
  std::vector<cplx> c(n_points);
  double err = 0.0;
  const long long half = static_cast<long long>(n_points / 2);
  for (const auto& t : u.terms()) {
    const double lam = u.frequency(t);
    const long long k = std::llround(lam * L);
    if (k >= half || k < -half)
      throw Error(ErrorCode::FrequencyOutOfRange,
                  "frequency " + std::to_string(lam) + " not representable on the grid");
    err = std::max(err, std::abs(lam - static_cast<double>(k) / L));
    c[fft::slot_of(k, n_points)] += t.coef;
  }
  return {GridField::from_coefficients(L, std::move(c)), err};
}

GridField gf_multiplier(const GridField& f, const std::function<cplx(double)>& m) {
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != cplx(0.0)) c[i] *= m(f.frequency(i));
  return GridField::from_coefficients(f.L(), std::move(c));
}

GridField gf_derivative(const GridField& f) {
  return gf_multiplier(f, [](double xi) { return cplx(0.0, xi); });
}

std::vector<cplx> gf_upsample(const GridField& f, std::size_t factor) {
  const std::size_t n = f.size(), m = n * factor;
  if (factor == 1) return {f.samples().begin(), f.samples().end()};
  std::vector<cplx> c(m);
  auto src = f.coefficients();
  for (std::size_t i = 0; i < n; ++i) c[fft::slot_of(f.index(i), m)] = src[i];
  return fft::backward(c);
}

GridField gf_downsample(double L, std::span<const cplx> fine, std::size_t n_points) {
  const std::size_t m = fine.size();
  auto cf = coeffs_of(fine);
  std::vector<cplx> c(n_points);
  for (std::size_t i = 0; i < n_points; ++i)
    c[i] = cf[fft::slot_of(fft::signed_index(i, n_points), m)];
  return GridField::from_coefficients(L, std::move(c));
}

GridField gf_mul(const GridField& f, const GridField& g, std::size_t pad) {
  require_same(f, g);
  if (pad == 0 || (pad & (pad - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "padding factor must be a power of two");
  auto a = gf_upsample(f, pad);
  auto b = gf_upsample(g, pad);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return gf_downsample(f.L(), a, f.size());
}

GridField gf_add(const GridField& f, const GridField& g) {
  require_same(f, g);
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += g.coefficients()[i];
  return GridField::from_coefficients(f.L(), std::move(c));
}

GridField gf_sub(const GridField& f, const GridField& g) {
  require_same(f, g);
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= g.coefficients()[i];
  return GridField::from_coefficients(f.L(), std::move(c));
}

GridField gf_scale(const GridField& f, cplx s) {
  std::vector<cplx> c(f.coefficients().begin(), f.coefficients().end());
  for (auto& v : c) v *= s;
  return GridField::from_coefficients(f.L(), std::move(c));
}

GridField gf_conj(const GridField& f) {
  const std::size_t n = f.size();
  std::vector<cplx> c(n);
  auto src = f.coefficients();
  for (std::size_t i = 0; i < n; ++i) c[fft::slot_of(-f.index(i), n)] = std::conj(src[i]);
  // The Nyquist slot has no partner; conj(e^{-i n x/2L}) is not representable.
  c[n / 2] = 0.0;
  return GridField::from_coefficients(f.L(), std::move(c));
}

GridField gf_random_bandlimited(std::uint64_t seed, double L, std::size_t n_points,
                                double band_lo, double band_hi, AmplitudeLaw law) {
  GridField probe(L, n_points);
  if (band_hi * L >= static_cast<double>(n_points / 2))
    throw Error(ErrorCode::FrequencyOutOfRange, "band exceeds grid Nyquist frequency");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> c(n_points);
  // Fixed slot order keeps the draw sequence independent of band edges
  // rounding.
  for (std::size_t i = 0; i < n_points; ++i) {
    const double xi = probe.frequency(i);
    const double th = phase(rng);
    const double a = std::abs(xi);
    if (a < band_lo || a > band_hi) continue;
    double mod = law.scale;
    if (law.kind == AmplitudeLaw::Kind::Power) mod *= std::pow(std::max(a, 1.0 / L), -law.exponent);  // zero mode sized like k = 1
    c[i] = std::polar(mod, th);
  }
  return GridField::from_coefficients(L, std::move(c));
}

double gf_energy(const GridField& f) {
  double s = 0.0;
  for (auto c : f.coefficients()) s += std::norm(c);
  return s * f.period();
}

void gf_write_binary(const GridField& f, const std::string& path) {
  static_assert(std::endian::native == std::endian::little, "dump format is little-endian");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  for (auto v : f.samples()) {
    double re = v.real(), im = v.imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof re);
    out.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
  std::ofstream meta(path + ".json");
  meta << nlohmann::json{{"L", f.L()}, {"n_points", f.size()}}.dump(2) << "\n";
}

GridField gf_read_binary(const std::string& path) {
  std::ifstream meta(path + ".json");
  if (!meta) throw Error(ErrorCode::InvalidArgument, "missing sidecar " + path + ".json");
  auto j = nlohmann::json::parse(meta);
  const double L = j.at("L").get<double>();
  const auto n = j.at("n_points").get<std::size_t>();
  std::ifstream in(path, std::ios::binary);
  std::vector<cplx> s(n);
  for (auto& v : s) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), sizeof re);
    in.read(reinterpret_cast<char*>(&im), sizeof im);
    v = {re, im};
  }
  if (!in) throw Error(ErrorCode::InvalidArgument, "truncated grid dump " + path);
  return GridField::from_samples(L, std::move(s));
}

}  // namespace uls
