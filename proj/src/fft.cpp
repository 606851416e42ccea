#include "uls/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <utility>

namespace uls::fft {
namespace {

// FFTW's planner is not thread-safe; execution with new-array API is.
std::mutex g_plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> g_plans;

fftw_plan plan_for(std::size_t n, int sign) {
  std::lock_guard lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = g_plans.find(key);
  if (it != g_plans.end()) return it->second;
  auto* a = fftw_alloc_complex(n);
  auto* b = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), a, b, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  g_plans.emplace(key, p);
  return p;
}

void run(std::span<const cplx> in, std::span<cplx> out, int sign) {
  const std::size_t n = in.size();
  if (n == 0) return;
  fftw_plan p = plan_for(n, sign);
  if (in.data() == out.data()) {
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
  } else {
    // FFTW_ESTIMATE plans never write to the input of an out-of-place
    // complex transform.
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, FFTW_FORWARD); }
void backward(std::span<const cplx> in, std::span<cplx> out) { run(in, out, FFTW_BACKWARD); }

std::vector<cplx> forward(std::span<const cplx> in) {
  std::vector<cplx> out(in.size());
  forward(in, out);
  return out;
}

std::vector<cplx> backward(std::span<const cplx> in) {
  std::vector<cplx> out(in.size());
  backward(in, out);
  return out;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace uls::fft
