#pragma once

// Uniform overload set over the two representations so the calculus, norms
// and solver can be written once.

#include <concepts>
#include <functional>

#include "uls/gridfield.hpp"
#include "uls/trigpoly.hpp"

namespace uls {

using Multiplier = std::function<cplx(double)>;

inline TrigPoly apply_multiplier(const TrigPoly& u, const Multiplier& m) { return tp_multiplier(u, m); }
inline GridField apply_multiplier(const GridField& u, const Multiplier& m) { return gf_multiplier(u, m); }

inline TrigPoly multiply(const TrigPoly& u, const TrigPoly& v) { return tp_mul(u, v); }
inline GridField multiply(const GridField& u, const GridField& v) { return gf_mul(u, v); }

inline TrigPoly add(const TrigPoly& u, const TrigPoly& v) { return tp_add(u, v); }
inline GridField add(const GridField& u, const GridField& v) { return gf_add(u, v); }

inline TrigPoly subtract(const TrigPoly& u, const TrigPoly& v) { return tp_sub(u, v); }
inline GridField subtract(const GridField& u, const GridField& v) { return gf_sub(u, v); }

inline TrigPoly scale(const TrigPoly& u, cplx c) { return tp_scale(u, c); }
inline GridField scale(const GridField& u, cplx c) { return gf_scale(u, c); }

inline TrigPoly conjugate(const TrigPoly& u) { return tp_conj(u); }
inline GridField conjugate(const GridField& u) { return gf_conj(u); }

inline TrigPoly differentiate(const TrigPoly& u) { return tp_derivative(u); }
inline GridField differentiate(const GridField& u) { return gf_derivative(u); }

inline TrigPoly zero_like(const TrigPoly& u) { return TrigPoly(u.module()); }
inline GridField zero_like(const GridField& u) { return GridField(u.L(), u.size()); }

inline double max_frequency(const TrigPoly& u) { return u.max_abs_frequency(); }
inline double max_frequency(const GridField& u) { return u.max_abs_frequency(1e-14); }

inline double wiener(const TrigPoly& u) { return u.wiener_norm(); }
inline double wiener(const GridField& u) { return u.wiener_norm(); }

template <class F>
concept SpectralField = requires(const F& u, const Multiplier& m, cplx c) {
  { apply_multiplier(u, m) } -> std::same_as<F>;
  { multiply(u, u) } -> std::same_as<F>;
  { add(u, u) } -> std::same_as<F>;
  { subtract(u, u) } -> std::same_as<F>;
  { scale(u, c) } -> std::same_as<F>;
  { conjugate(u) } -> std::same_as<F>;
  { differentiate(u) } -> std::same_as<F>;
  { zero_like(u) } -> std::same_as<F>;
  { max_frequency(u) } -> std::convertible_to<double>;
};

}  // namespace uls
