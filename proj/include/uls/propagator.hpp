#pragma once

#include <vector>

#include "uls/norms.hpp"

namespace uls {

// e^{-tA(D)} u: each coefficient at xi picks up exp(-t A(xi)).
template <SpectralField F>
F linear_evolve(const F& u, const DispersionSymbol& sym, double t) {
  if (t == 0.0) return u;
  return apply_multiplier(u, [&sym, t](double xi) { return std::exp(-t * sym(xi)); });
}

struct KernelOptions {
  std::size_t n = std::size_t{1} << 14;  // points on the first pass
  double dz = 0.5;                       // rescaled spatial step z = N x
  double tolerance = 0.01;               // relative agreement of refinements
  int max_refinements = 3;
  double truncation = 1e-10;             // drop |kernel| below this * peak
};

struct KernelEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  double z_range = 0.0;  // covered |x| <= z_range / N
  std::size_t points = 0;
};

// L^1 norm of the inverse Fourier transform of d/dxi (A psi_N), with
// psi_1 = phi. Throws QuadratureNotConverged.
KernelEstimate kernel_l1_estimate(const DispersionSymbol& sym, Dyadic N, const KernelOptions& opts = {});

// ||e^{-tA}u0||_{l^inf H^s} / ||u0||_{l^inf H^s} for each t.
std::vector<double> linear_energy_sweep(const TrigPoly& u0, const DispersionSymbol& sym, double s,
                                        const std::vector<double>& times,
                                        const CutoffFamily& family, const NormOptions& opts = {});
std::vector<double> linear_energy_sweep(const GridField& u0, const DispersionSymbol& sym, double s,
                                        const std::vector<double>& times,
                                        const CutoffFamily& family, const NormOptions& opts = {});

}  // namespace uls
