#include "uls/propagator.hpp"

#include <cmath>
#include <numbers>

#include "uls/errors.hpp"
#include "uls/fft.hpp"
#include "uls/parallel.hpp"

namespace uls {
namespace {

double psi_derivative(Dyadic N, double xi) {
  if (N == 1) return phi_derivative(xi);
  const double n = static_cast<double>(N);
  return (phi_derivative(xi / n) - 2.0 * phi_derivative(2.0 * xi / n)) / n;
}

// One pass in the rescaled variables: eta = xi / N, z = N x. The L^1 norm is
// invariant under this change of variables.
double kernel_pass(const DispersionSymbol& sym, Dyadic N, std::size_t n, double dz, double trunc) {
  const double nn = static_cast<double>(N);
  const double deta = 2.0 * std::numbers::pi / (static_cast<double>(n) * dz);
  std::vector<cplx> m(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double eta = deta * static_cast<double>(fft::signed_index(k, n));
    const double xi = nn * eta;
    const double p = psi(N, xi), dp = psi_derivative(N, xi);
    if (p == 0.0 && dp == 0.0) continue;
    m[k] = sym.d(xi) * p + sym(xi) * dp;
  }
  auto K = fft::backward(m);
  const double norm = deta / (2.0 * std::numbers::pi);
  double peak = 0.0;
  for (auto& v : K) peak = std::max(peak, std::abs(v) * norm);
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (auto& v : K) {
    const double a = std::abs(v) * norm;
    if (a >= trunc * peak) acc += a;
  }
  return acc * dz;
}

}  // namespace

KernelEstimate kernel_l1_estimate(const DispersionSymbol& sym, Dyadic N, const KernelOptions& opts) {
  if (!is_dyadic(N)) throw Error(ErrorCode::InvalidArgument, "N must be dyadic");
  std::size_t n = opts.n;
  double dz = opts.dz;
  double prev = kernel_pass(sym, N, n, dz, opts.truncation);
  for (int r = 0; r < opts.max_refinements; ++r) {
    // Double the z-range and halve the step.
    n *= 4;
    dz /= 2;
    const double cur = kernel_pass(sym, N, n, dz, opts.truncation);
    const double diff = std::abs(cur - prev);
    if (diff <= opts.tolerance * std::abs(cur) || cur == 0.0) {
      return {cur, diff, static_cast<double>(n) * dz / 2.0, n};
    }
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureNotConverged,
              "kernel L1 estimate did not settle for N = " + std::to_string(N));
}

namespace {

template <class F>
std::vector<double> sweep_impl(const F& u0, const DispersionSymbol& sym, double s,
                               const std::vector<double>& times, const CutoffFamily& family,
                               const NormOptions& opts) {
  const double base = uls_norm(u0, s, sym, family, opts).value;
  std::vector<double> out(times.size(), 1.0);
  if (base == 0.0) return out;
  NormOptions o = opts;
  if (!o.n_max) o.n_max = dyadic_cover(max_frequency(u0));
  for (std::size_t i = 0; i < times.size(); ++i)
    out[i] = uls_norm(linear_evolve(u0, sym, times[i]), s, sym, family, o).value / base;
  return out;
}

}  // namespace

std::vector<double> linear_energy_sweep(const TrigPoly& u0, const DispersionSymbol& sym, double s,
                                        const std::vector<double>& times,
                                        const CutoffFamily& family, const NormOptions& opts) {
  return sweep_impl(u0, sym, s, times, family, opts);
}

std::vector<double> linear_energy_sweep(const GridField& u0, const DispersionSymbol& sym, double s,
                                        const std::vector<double>& times,
                                        const CutoffFamily& family, const NormOptions& opts) {
  return sweep_impl(u0, sym, s, times, family, opts);
}

}  // namespace uls
