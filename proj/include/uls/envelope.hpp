#pragma once

#include <map>
#include <optional>
#include <vector>

#include "uls/solver.hpp"

namespace uls {

struct EnvelopeSequence {
  double delta = 0.1;
  double s = 0.0;
  std::map<Dyadic, double> c;
  // N^s ||P_N u0||_{(l^inf L^2)_N} per block of the data
  std::map<Dyadic, double> data_blocks;
  bool degenerate = false;  // all c_N == 0

  double l2() const;
  nlohmann::json to_json() const;
};

// c_N = max_M 2^{-delta |log2 N - log2 M|} M^s ||P_M u0||_{(l^inf L^2)_M},
// the max over the data's blocks, for N up to max(N_top, data range).
template <class F>
EnvelopeSequence build_envelope(const F& u0, double s, double delta, const DispersionSymbol& sym,
                                const CutoffFamily& family, const NormOptions& opts = {},
                                std::optional<Dyadic> N_top = std::nullopt);

// Young's inequality constant: sum_k 2^{-delta |k|}.
double envelope_sharpness_constant(double delta);

struct EnvelopeCheck {
  bool energy = false;          // c_N >= N^s ||P_N u0||
  bool slowly_varying = false;  // c_N / c_M <= 2^{delta |n - m|}
  bool sharp = false;           // ||c||_{l^2} / ||u0|| in [1, C_delta]
  double sharp_ratio = 0.0;
  double worst_slow_ratio = 0.0;  // max of (c_N/c_M) / 2^{delta|n-m|}
};

EnvelopeCheck check_envelope(const EnvelopeSequence& env);

struct EnvelopeRow {
  Dyadic N = 0;
  double c = 0.0;
  double sup_ratio = 0.0;    // sup_t N^s ||P_N u(t)||_{(l^inf L^2)_N} / c_N
  double data_ratio = 0.0;   // ||P_{<=2N}u0 - P_{<=N}u0||_{l^inf H^0} / (N^{-s} c_N)
};

struct EnvelopeStudy {
  EnvelopeSequence envelope;
  std::vector<EnvelopeRow> rows;
  double max_ratio = 0.0;
  double max_data_ratio = 0.0;
  double T_achieved = 0.0;
};

template <class F>
EnvelopeStudy envelope_propagation_study(const F& u0, const EquationSpec& eq, const SolveConfig& cfg,
                                         double s, double delta, const CutoffFamily& family,
                                         const NormOptions& opts = {},
                                         std::optional<Dyadic> M = std::nullopt);

}  // namespace uls
