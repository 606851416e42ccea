#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "uls/lp_calculus.hpp"
#include "uls/symbols.hpp"

namespace uls {

struct CutoffFamily {
  double sigma = 1.0;
  bool partition_normalized = true;

  static CutoffFamily for_symbol(const DispersionSymbol& sym, bool normalized = true) {
    return {sym.sigma, normalized};
  }

  double scale(Dyadic N) const;  // N^sigma
  // Profile at unit scale, divided by sum_j chi(x - j) when normalized.
  double profile(double x) const;
  double window(double x, double center, Dyadic N) const {
    return profile((x - center) / scale(N));
  }
  double l2_norm() const;          // ||chi||_{L^2} at unit scale, cached
  double derivative_sup() const;   // ||chi'||_inf at unit scale
  double plane_wave_value(Dyadic N) const;  // N^{sigma/2} ||chi||_{L^2}
  // Fourier transform of chi^2 at unit scale, int chi(x)^2 e^{i w x} dx.
  double sq_transform(double omega) const;
};

enum class SupMode { Lattice, Translation };
enum class WindowKind { Sharp, Mollified };

struct NormOptions {
  SupMode mode = SupMode::Translation;
  WindowKind window = WindowKind::Sharp;
  // Trig backend: centers scanned over [origin, origin + max(scan_length,
  // 4 N^sigma)], or one exact period for single-generator modules.
  double scan_origin = 0.0;
  double scan_length = 256.0;
  std::size_t max_centers = std::size_t{1} << 15;
  std::optional<Dyadic> n_max;  // force the block range
};

struct WindowedNorm {
  double value = 0.0;
  double center = 0.0;
  double certified_gap = 0.0;
  double spacing = 0.0;
};

struct BlockNorm {
  double value = 0.0;
  double center = 0.0;
  double gap = 0.0;
};

struct NormReport {
  double value = 0.0;
  double s = 0.0;
  std::map<Dyadic, BlockNorm> per_block;
  double sup_grid_spacing = 0.0;
  double certified_gap = 0.0;   // value + gap bounds the sampled-window sup
  double unresolved_tail = 0.0; // Wiener mass above the block range (grid)

  nlohmann::json to_json() const;
};

WindowedNorm windowed_norm(const TrigPoly& u, Dyadic N, const CutoffFamily& family,
                           const NormOptions& opts = {});
WindowedNorm windowed_norm(const GridField& u, Dyadic N, const CutoffFamily& family,
                           const NormOptions& opts = {});

// fattened = true uses P~_N in place of P_N.
NormReport uls_norm(const TrigPoly& u, double s, const DispersionSymbol& sym,
                    const CutoffFamily& family, const NormOptions& opts = {},
                    bool fattened = false);
NormReport uls_norm(const GridField& u, double s, const DispersionSymbol& sym,
                    const CutoffFamily& family, const NormOptions& opts = {},
                    bool fattened = false);

// lattice, translation, mollified_cutoff, fattened_projection
template <class F>
std::map<std::string, double> equiv_norm_variants(const F& u, double s, const DispersionSymbol& sym,
                                                  const CutoffFamily& family,
                                                  const NormOptions& opts = {});

// Certified upper bound of the translation-mode norm by Wiener sums of each
// block: ||chi_y P_N u|| <= ||chi_N||_{L^2} sum |psi_N a|. Cheap.
double uls_norm_wiener_bound(const TrigPoly& u, double s, const CutoffFamily& family);
double uls_norm_wiener_bound(const GridField& u, double s, const CutoffFamily& family);

struct SupEstimate {
  double value = 0.0;
  double at = 0.0;
  double gap = 0.0;  // sup over the sampled window <= value + gap
};

struct SupOptions {
  double window = 1e4;  // trig backend, multi-generator modules
  std::size_t max_points = std::size_t{1} << 21;
};

// sup |d^j u| over the window (trig) or torus (grid)
SupEstimate sup_norm(const TrigPoly& u, int j = 0, const SupOptions& opts = {});
SupEstimate sup_norm(const GridField& u, int j = 0, const SupOptions& opts = {});

// sum_{j <= k} sup |d^j u|
double ck_norm(const TrigPoly& u, int k, const SupOptions& opts = {});
double ck_norm(const GridField& u, int k, const SupOptions& opts = {});

}  // namespace uls
