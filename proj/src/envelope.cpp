#include "uls/envelope.hpp"

#include <cmath>

#include "uls/errors.hpp"
#include "uls/parallel.hpp"

namespace uls {
namespace {

int log2_of(Dyadic N) {
  int k = 0;
  while ((Dyadic{1} << k) < N) ++k;
  return k;
}

// Tolerance for the exact envelope identities: a few ulps on the ratio.
constexpr double kUlpSlack = 4.0 * std::numeric_limits<double>::epsilon();

}  // namespace

double EnvelopeSequence::l2() const {
  double sq = 0.0;
  for (auto& [N, v] : c) sq += v * v;
  return std::sqrt(sq);
}

nlohmann::json EnvelopeSequence::to_json() const {
  nlohmann::json j;
  j["delta"] = delta;
  j["s"] = s;
  j["degenerate"] = degenerate;
  auto& rows = j["c"] = nlohmann::json::array();
  for (auto& [N, v] : c) {
    auto it = data_blocks.find(N);
    rows.push_back({{"N", N}, {"c", v}, {"block", it == data_blocks.end() ? 0.0 : it->second}});
  }
  return j;
}

double envelope_sharpness_constant(double delta) {
  const double q = std::pow(2.0, -delta);
  return 1.0 + 2.0 * q / (1.0 - q);
}

template <class F>
EnvelopeSequence build_envelope(const F& u0, double s, double delta, const DispersionSymbol& sym,
                                const CutoffFamily& family, const NormOptions& opts,
                                std::optional<Dyadic> N_top) {
  if (!(delta > 0 && delta < 1)) throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  EnvelopeSequence env;
  env.delta = delta;
  env.s = s;
  const auto rep = uls_norm(u0, s, sym, family, opts);
  Dyadic top = rep.per_block.empty() ? 1 : rep.per_block.rbegin()->first;
  if (N_top) top = std::max(top, *N_top);
  for (auto& [M, b] : rep.per_block) env.data_blocks[M] = std::pow(static_cast<double>(M), s) * b.value;
  for (Dyadic N : dyadics_upto(top)) {
    double c = 0.0;
    const int n = log2_of(N);
    for (auto& [M, a] : env.data_blocks)
      c = std::max(c, std::pow(2.0, -delta * std::abs(n - log2_of(M))) * a);
    env.c[N] = c;
    if (!env.data_blocks.count(N)) env.data_blocks[N] = 0.0;
  }
  env.degenerate = env.l2() == 0.0;
  return env;
}

EnvelopeCheck check_envelope(const EnvelopeSequence& env) {
  EnvelopeCheck r;
  r.energy = true;
  for (auto& [N, a] : env.data_blocks) {
    auto it = env.c.find(N);
    if (it == env.c.end() || it->second < a) r.energy = false;
  }
  r.slowly_varying = true;
  for (auto& [N, cn] : env.c)
    for (auto& [M, cm] : env.c) {
      if (cm == 0.0) {
        if (cn != 0.0) r.slowly_varying = false;
        continue;
      }
      const double allowed = std::pow(2.0, env.delta * std::abs(log2_of(N) - log2_of(M)));
      const double ratio = (cn / cm) / allowed;
      r.worst_slow_ratio = std::max(r.worst_slow_ratio, ratio);
      if (ratio > 1.0 + kUlpSlack) r.slowly_varying = false;
    }
  double sq = 0.0;
  for (auto& [N, a] : env.data_blocks) sq += a * a;
  const double data = std::sqrt(sq);
  if (data == 0.0) {
    r.sharp = env.degenerate;
    r.sharp_ratio = env.degenerate ? 1.0 : 0.0;
  } else {
    r.sharp_ratio = env.l2() / data;
    r.sharp = r.sharp_ratio >= 1.0 - kUlpSlack &&
              r.sharp_ratio <= envelope_sharpness_constant(env.delta) * (1.0 + kUlpSlack);
  }
  return r;
}

template <class F>
EnvelopeStudy envelope_propagation_study(const F& u0, const EquationSpec& eq, const SolveConfig& cfg,
                                         double s, double delta, const CutoffFamily& family,
                                         const NormOptions& opts, std::optional<Dyadic> M) {
  EnvelopeStudy st;
  auto tr = solve_with_time_search(u0, eq, cfg, M);
  st.T_achieved = tr.T_achieved;
  Dyadic top = 1;
  for (const auto& u : tr.states) top = std::max(top, dyadic_cover(max_frequency(u)));
  st.envelope = build_envelope(u0, s, delta, eq.sym, family, opts, top);
  NormOptions o = opts;
  o.n_max = top;
  std::map<Dyadic, double> sup_block;
  std::vector<NormReport> reps(tr.states.size());
  parallel_for(tr.states.size(), [&](std::size_t k) { reps[k] = uls_norm(tr.states[k], s, eq.sym, family, o); });
  for (const auto& rep : reps)
    for (auto& [N, b] : rep.per_block)
      sup_block[N] = std::max(sup_block[N], std::pow(static_cast<double>(N), s) * b.value);
  for (auto& [N, c] : st.envelope.c) {
    EnvelopeRow row;
    row.N = N;
    row.c = c;
    row.sup_ratio = c > 0 ? sup_block[N] / c : (sup_block[N] > 0 ? INFINITY : 0.0);
    const F diff = subtract(project_leq(2 * N, u0), project_leq(N, u0));
    const double d = uls_norm(diff, 0.0, eq.sym, family, opts).value;
    const double scale = std::pow(static_cast<double>(N), -s) * c;
    row.data_ratio = scale > 0 ? d / scale : (d > 0 ? INFINITY : 0.0);
    st.max_ratio = std::max(st.max_ratio, row.sup_ratio);
    st.max_data_ratio = std::max(st.max_data_ratio, row.data_ratio);
    st.rows.push_back(row);
  }
  return st;
}

template EnvelopeSequence build_envelope(const TrigPoly&, double, double, const DispersionSymbol&,
                                         const CutoffFamily&, const NormOptions&, std::optional<Dyadic>);
template EnvelopeSequence build_envelope(const GridField&, double, double, const DispersionSymbol&,
                                         const CutoffFamily&, const NormOptions&, std::optional<Dyadic>);
template EnvelopeStudy envelope_propagation_study(const TrigPoly&, const EquationSpec&, const SolveConfig&,
                                                  double, double, const CutoffFamily&, const NormOptions&,
                                                  std::optional<Dyadic>);
template EnvelopeStudy envelope_propagation_study(const GridField&, const EquationSpec&, const SolveConfig&,
                                                  double, double, const CutoffFamily&, const NormOptions&,
                                                  std::optional<Dyadic>);

}  // namespace uls
