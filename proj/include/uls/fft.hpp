#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace uls::fft {

using cplx = std::complex<double>;

// out[k] = sum_j in[j] e^{-2 pi i jk/n}. Unnormalized.
void forward(std::span<const cplx> in, std::span<cplx> out);
// out[j] = sum_k in[k] e^{+2 pi i jk/n}. Unnormalized.
void backward(std::span<const cplx> in, std::span<cplx> out);

std::vector<cplx> forward(std::span<const cplx> in);
std::vector<cplx> backward(std::span<const cplx> in);

// Signed frequency index of FFT slot i for length n: i for i < n/2, i - n
// otherwise (so the Nyquist slot maps to -n/2).
inline long long signed_index(std::size_t i, std::size_t n) {
  return i < n / 2 ? static_cast<long long>(i)
                   : static_cast<long long>(i) - static_cast<long long>(n);
}

inline std::size_t slot_of(long long k, std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

std::size_t next_pow2(std::size_t n);

}  // namespace uls::fft
