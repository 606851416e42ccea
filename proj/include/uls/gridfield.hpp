#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uls/trigpoly.hpp"

namespace uls {

// Field on the torus [0, 2 pi L) sampled at x_j = 2 pi L j / n. Coefficient
// slot i holds the Fourier coefficient at frequency k_i / L with
// u(x) = sum_k c_k e^{i k x / L}.
class GridField {
 public:
  GridField(double L, std::size_t n_points);  // zero field

  static GridField from_samples(double L, std::vector<cplx> samples);
  static GridField from_coefficients(double L, std::vector<cplx> coeffs);

  double L() const { return L_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const cplx> samples() const { return samples_; }
  std::span<const cplx> coefficients() const { return coeffs_; }

  long long index(std::size_t slot) const;
  double frequency(std::size_t slot) const { return index(slot) / L_; }
  double x(std::size_t j) const;
  // Largest |k/L| with a coefficient of modulus above rel * max modulus.
  double max_abs_frequency(double rel = 0.0) const;
  double wiener_norm() const;
  double period() const;

 private:
  GridField(double L, std::vector<cplx> samples, std::vector<cplx> coeffs);
  double L_;
  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;
};

struct GridConversion {
  GridField field;
  double max_rounding_error = 0.0;  // max |lambda - k/L| over terms
};

GridConversion gf_from_trigpoly(const TrigPoly& u, double L, std::size_t n_points);

GridField gf_multiplier(const GridField& f, const std::function<cplx(double)>& m);
GridField gf_derivative(const GridField& f);
GridField gf_mul(const GridField& f, const GridField& g, std::size_t pad = 2);
GridField gf_add(const GridField& f, const GridField& g);
GridField gf_sub(const GridField& f, const GridField& g);
GridField gf_scale(const GridField& f, cplx c);
GridField gf_conj(const GridField& f);

// Samples of f on a grid refined by `factor` (band-limited interpolation).
std::vector<cplx> gf_upsample(const GridField& f, std::size_t factor);
// Inverse of gf_upsample: keeps the coefficients representable on n points.
GridField gf_downsample(double L, std::span<const cplx> fine_samples, std::size_t n_points);

struct AmplitudeLaw {
  enum class Kind { Flat, Power };
  Kind kind = Kind::Flat;
  double exponent = 0.0;  // |c_k| ~ scale * |xi|^{-exponent} for Power
  double scale = 1.0;
};

GridField gf_random_bandlimited(std::uint64_t seed, double L, std::size_t n_points,
                                double band_lo, double band_hi, AmplitudeLaw law = {});

// integral over one period of |f|^2
double gf_energy(const GridField& f);

void gf_write_binary(const GridField& f, const std::string& path);
GridField gf_read_binary(const std::string& path);

}  // namespace uls
