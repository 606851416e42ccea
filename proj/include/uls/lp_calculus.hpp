#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "uls/bump.hpp"
#include "uls/field_ops.hpp"

namespace uls {

using Dyadic = std::uint64_t;

// psi_1 = phi, psi_N(xi) = phi(xi/N) - phi(2 xi/N) for N >= 2.
double psi(Dyadic N, double xi);
double phi_leq(Dyadic N, double xi);
// Symbol of P_{N/2} + P_N + P_{2N} (the N/2 term absent for N = 1).
double psi_fat(Dyadic N, double xi);
std::vector<Dyadic> fat_set(Dyadic N);

// Smallest dyadic N >= 1.1 * max_freq (at least 1).
Dyadic dyadic_cover(double max_freq);
// 1, 2, 4, ..., N_max
std::vector<Dyadic> dyadics_upto(Dyadic N_max);
bool is_dyadic(Dyadic N);

template <SpectralField F>
F project(Dyadic N, const F& u) {
  return apply_multiplier(u, [N](double xi) { return cplx(psi(N, xi)); });
}

template <SpectralField F>
F project_leq(Dyadic N, const F& u) {
  return apply_multiplier(u, [N](double xi) { return cplx(phi_leq(N, xi)); });
}

template <SpectralField F>
F project_fat(Dyadic N, const F& u) {
  return apply_multiplier(u, [N](double xi) { return cplx(psi_fat(N, xi)); });
}

template <class F>
struct Paraproduct {
  F low_high;
  F high_low;
  F high_high;
};

// Low cut for block N: P_{<= max(N/128, 1)}.
Dyadic paraproduct_low_cut(Dyadic N);

// Per-block trichotomy of P_N(fg) for N <= N_max. Throws SupportExceeded
// when fg has content above 1.1 N_max.
template <SpectralField F>
std::map<Dyadic, Paraproduct<F>> paraproduct_decompose(const F& f, const F& g, Dyadic N_max);

template <SpectralField F>
F commutator_pn(Dyadic N, const F& f, const F& g) {
  return subtract(project(N, multiply(f, g)), multiply(f, project(N, g)));
}

extern template std::map<Dyadic, Paraproduct<TrigPoly>> paraproduct_decompose(
    const TrigPoly&, const TrigPoly&, Dyadic);
extern template std::map<Dyadic, Paraproduct<GridField>> paraproduct_decompose(
    const GridField&, const GridField&, Dyadic);

}  // namespace uls
