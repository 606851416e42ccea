#include "uls/lp_calculus.hpp"

#include <bit>
#include <cmath>

#include "uls/errors.hpp"

namespace uls {

bool is_dyadic(Dyadic N) { return N != 0 && std::has_single_bit(N); }

double psi(Dyadic N, double xi) {
  const double n = static_cast<double>(N);
  if (N == 1) return phi(xi);
  return phi(xi / n) - phi(2.0 * xi / n);
}

double phi_leq(Dyadic N, double xi) { return phi(xi / static_cast<double>(N)); }

std::vector<Dyadic> fat_set(Dyadic N) {
  if (N == 1) return {1, 2};
  return {N / 2, N, 2 * N};
}

double psi_fat(Dyadic N, double xi) {
  double s = 0.0;
  for (Dyadic M : fat_set(N)) s += psi(M, xi);
  return s;
}

Dyadic dyadic_cover(double max_freq) {
  Dyadic N = 1;
  while (static_cast<double>(N) < kPhiOuter * max_freq) N <<= 1;
  return N;
}

std::vector<Dyadic> dyadics_upto(Dyadic N_max) {
  std::vector<Dyadic> v;
  for (Dyadic N = 1; N <= N_max; N <<= 1) v.push_back(N);
  return v;
}

Dyadic paraproduct_low_cut(Dyadic N) { return std::max<Dyadic>(N / 128, 1); }

template <SpectralField F>
std::map<Dyadic, Paraproduct<F>> paraproduct_decompose(const F& f, const F& g, Dyadic N_max) {
  if (!is_dyadic(N_max)) throw Error(ErrorCode::InvalidArgument, "N_max must be dyadic");
  const F fg = multiply(f, g);
  if (max_frequency(fg) > kPhiOuter * static_cast<double>(N_max) * (1 + 1e-12))
    throw Error(ErrorCode::SupportExceeded, "product support exceeds 1.1 N_max");

  std::map<Dyadic, Paraproduct<F>> out;
  for (Dyadic N : dyadics_upto(N_max)) {
    const Dyadic lo = paraproduct_low_cut(N);
    const F f_lo = project_leq(lo, f);
    const F g_lo = project_leq(lo, g);
    F lh = project(N, multiply(f_lo, project_fat(N, g)));
    // Dyadic pieces of f at or below the low cut are already inside f_lo;
    // dropping them keeps LH and HL disjoint when N/2 <= lo.
    F f_hi = zero_like(f);
    for (Dyadic A : fat_set(N))
      if (A > lo) f_hi = add(f_hi, project(A, f));
    F hl = project(N, multiply(f_hi, g_lo));
    F hh = subtract(subtract(project(N, fg), lh), hl);
    out.emplace(N, Paraproduct<F>{std::move(lh), std::move(hl), std::move(hh)});
  }
  return out;
}

template std::map<Dyadic, Paraproduct<TrigPoly>> paraproduct_decompose(const TrigPoly&,
                                                                        const TrigPoly&, Dyadic);
template std::map<Dyadic, Paraproduct<GridField>> paraproduct_decompose(const GridField&,
                                                                         const GridField&, Dyadic);

}  // namespace uls
