#include "uls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "uls/errors.hpp"
#include "uls/parallel.hpp"

namespace uls {

void EquationSpec::validate() const {
  nl.validate();
  if (nl.reality && !sym.preserves_reality)
    throw Error(ErrorCode::InvalidArgument, "reality mode needs a reality-preserving symbol");
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "s must be >= 0");
}

namespace {

void check_config(const SolveConfig& cfg) {
  if (!(cfg.T > 0)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
  if (cfg.n_time_nodes < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 time nodes");
  if (cfg.picard_max_iters < 1) throw Error(ErrorCode::InvalidArgument, "picard_max_iters must be >= 1");
  if (!std::is_sorted(cfg.M_list.begin(), cfg.M_list.end()))
    throw Error(ErrorCode::InvalidArgument, "M_list must be ascending");
}

// Pruning only applies to the exact backend; grid fields carry a fixed
// coefficient array.
std::pair<TrigPoly, double> prune_state(TrigPoly u, double floor) {
  if (floor <= 0) return {std::move(u), 0.0};
  auto r = tp_prune(u, floor);
  return {std::move(r.poly), r.dropped_mass};
}

std::pair<GridField, double> prune_state(GridField u, double) { return {std::move(u), 0.0}; }

std::size_t spectrum_size(const TrigPoly& u) { return u.size(); }
std::size_t spectrum_size(const GridField& u) {
  double top = 0.0;
  for (auto c : u.coefficients()) top = std::max(top, std::abs(c));
  std::size_t n = 0;
  for (auto c : u.coefficients())
    if (std::abs(c) > 1e-14 * top) ++n;
  return n;
}

// Cumulative integrals F_k = int_0^{t_k} g on a uniform grid: a three-point
// start for F_1, composite Simpson steps over pairs afterwards.
template <class F>
std::vector<F> cumulative_simpson(const std::vector<F>& g, double h) {
  const std::size_t n = g.size();
  std::vector<F> out(n, zero_like(g[0]));
  out[1] = scale(add(add(scale(g[0], 5.0), scale(g[1], 8.0)), scale(g[2], -1.0)), h / 12.0);
  for (std::size_t k = 2; k < n; ++k)
    out[k] = add(out[k - 2], scale(add(add(g[k - 2], scale(g[k - 1], 4.0)), g[k]), h / 3.0));
  return out;
}

template <class F>
Trajectory<F> duhamel_picard(const F& u0, const EquationSpec& eq, std::optional<Dyadic> M,
                             const SolveConfig& cfg) {
  eq.validate();
  check_config(cfg);
  const std::size_t n = cfg.n_time_nodes;
  const double h = cfg.T / static_cast<double>(n - 1);
  const DispersionSymbol& A = eq.sym;
  const CutoffFamily fam = CutoffFamily::for_symbol(A);

  Trajectory<F> tr;
  tr.T_requested = tr.T_achieved = cfg.T;
  tr.times.resize(n);
  for (std::size_t k = 0; k < n; ++k) tr.times[k] = h * static_cast<double>(k);
  tr.times.back() = cfg.T;

  // Zeroth iterate: the free evolution.
  std::vector<F> u(n, u0);
  std::vector<double> dropped(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    auto [p, d] = prune_state(linear_evolve(u0, A, tr.times[k]), cfg.prune_floor);
    u[k] = std::move(p);
    dropped[k] = d;
  }

  const double data_size = 1.0 + wiener(u0);
  double prev = std::numeric_limits<double>::infinity();
  int rising = 0;
  for (int it = 1; it <= cfg.picard_max_iters; ++it) {
    std::vector<F> g(n, zero_like(u0));
    parallel_for(n, [&](std::size_t k) {
      g[k] = linear_evolve(nonlinearity(u[k], eq.nl, M), A, -tr.times[k]);
    });
    const std::vector<F> Fk = cumulative_simpson(g, h);
    std::vector<F> next(n, u0);
    std::vector<double> diffs(n, 0.0), drop(n, 0.0);
    parallel_for(n, [&](std::size_t k) {
      if (k == 0) return;
      auto [p, d] = prune_state(linear_evolve(add(u0, Fk[k]), A, tr.times[k]), cfg.prune_floor);
      next[k] = std::move(p);
      drop[k] = d;
      diffs[k] = uls_norm_wiener_bound(subtract(next[k], u[k]), eq.s, fam);
    });
    const double diff = *std::max_element(diffs.begin(), diffs.end());
    u = std::move(next);
    dropped = drop;
    tr.iterations = it;
    tr.final_residual = diff;
    if (!std::isfinite(diff) || diff > 1e6 * data_size)
      throw Error(ErrorCode::NoContraction, "Picard iterates diverge at T = " + std::to_string(cfg.T));
    if (diff < cfg.picard_tol) {
      tr.converged = true;
      break;
    }
    // Persistent growth past the first few sweeps means no contraction.
    rising = diff > prev ? rising + 1 : 0;
    if (it > 3 && rising >= 3)
      throw Error(ErrorCode::NoContraction, "Picard residual grows at T = " + std::to_string(cfg.T));
    prev = diff;
  }
  if (!tr.converged)
    throw Error(ErrorCode::NoContraction,
                "Picard iteration did not reach tolerance within " +
                    std::to_string(cfg.picard_max_iters) + " sweeps at T = " + std::to_string(cfg.T));

  tr.states = std::move(u);
  tr.diag.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    tr.diag[k].t = tr.times[k];
    tr.diag[k].spectrum_size = spectrum_size(tr.states[k]);
    tr.diag[k].pruned_mass = dropped[k];
    tr.dropped_mass += dropped[k];
  }
  if (cfg.prune_floor > 0 && tr.dropped_mass >= cfg.dropped_mass_budget * wiener(u0))
    tr.converged = false;
  return tr;
}

}  // namespace

template <class F>
Trajectory<F> picard_solve(const F& u0, const EquationSpec& eq, const SolveConfig& cfg) {
  if (!eq.nl.q_is_zero())
    throw Error(ErrorCode::InvalidArgument,
                "picard_solve needs Q = 0; use galerkin_solve for derivative nonlinearities");
  return duhamel_picard(u0, eq, std::nullopt, cfg);
}

template <class F>
Trajectory<F> galerkin_solve(const F& u0, const EquationSpec& eq, Dyadic M, const SolveConfig& cfg) {
  if (!is_dyadic(M)) throw Error(ErrorCode::InvalidArgument, "M must be dyadic");
  return duhamel_picard(u0, eq, std::optional<Dyadic>(M), cfg);
}

template <class F>
Trajectory<F> solve_with_time_search(const F& u0, const EquationSpec& eq, const SolveConfig& cfg,
                                     std::optional<Dyadic> M) {
  SolveConfig c = cfg;
  for (int halvings = 0;; ++halvings) {
    try {
      auto tr = M ? galerkin_solve(u0, eq, *M, c) : picard_solve(u0, eq, c);
      tr.T_requested = cfg.T;
      tr.T_achieved = c.T;
      tr.halvings = halvings;
      return tr;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoContraction || halvings >= cfg.max_halvings) throw;
      c.T /= 2;
    }
  }
}

template <class F>
void attach_diagnostics(Trajectory<F>& traj, const EquationSpec& eq, const CutoffFamily& family,
                        const NormOptions& opts, const SupOptions& sup) {
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    traj.diag[k].norm_s = uls_norm(traj.states[k], eq.s, eq.sym, family, opts).value;
    traj.diag[k].norm_c1 = ck_norm(traj.states[k], 1, sup);
  }
}

template <class F>
std::vector<CauchyRow> galerkin_cauchy_study(const F& u0, const EquationSpec& eq,
                                             const SolveConfig& cfg, const CutoffFamily& family,
                                             const NormOptions& opts) {
  if (cfg.M_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 Galerkin levels");
  std::vector<Trajectory<F>> runs;
  for (Dyadic M : cfg.M_list) runs.push_back(galerkin_solve(u0, eq, M, cfg));
  std::vector<CauchyRow> rows;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    CauchyRow r{cfg.M_list[i], cfg.M_list[i + 1], 0.0};
    const std::size_t n = runs[i].states.size();
    std::vector<double> d(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      d[k] = uls_norm(subtract(runs[i + 1].states[k], runs[i].states[k]), 0.0, eq.sym, family, opts).value;
    r.sup_diff = *std::max_element(d.begin(), d.end());
    rows.push_back(r);
  }
  return rows;
}

// ---- energy ----

double EnergyConstants::eval(double a, double b) const {
  double p = 0.0;
  for (int i = 0; i <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j)
      if (i + j >= 1) p += std::pow(a, i) * std::pow(b, j);
  return c_lin + c_nl * p;
}

nlohmann::json EnergyConstants::to_json() const {
  return {{"family", family}, {"c_lin", c_lin}, {"c_nl", c_nl}, {"degree", degree}};
}

int energy_degree(const EquationSpec& eq) {
  int d = std::max(eq.nl.nl_degree(), 0);
  if (!eq.nl.q_is_zero()) d = std::max(d, 2 * eq.nl.q_degree() + 1);
  return d;
}

std::string equation_family(const EquationSpec& eq) {
  std::string kind;
  if (eq.nl.q_is_zero() && eq.nl.nl_is_zero()) kind = "linear";
  else if (eq.nl.q_is_zero() && eq.nl.nl_degree() == 3) kind = "cubic";
  else if (!eq.nl.q_is_zero() && eq.nl.nl_is_zero() && eq.nl.q_degree() == 1) kind = "derivative";
  else kind = "general";
  return eq.sym.name + "/" + kind;
}

namespace {

// Frozen from calibration runs: c_lin from linear runs, then c_nl fitted with
// c_lin held fixed, over 4-term data and cos x + cos sqrt2 x of Wiener size
// 0.2..2 (T = 0.1, and T = 0.02 with M = 64 for the derivative family).
// Largest fits were about 0.023 (cubic) and 0.018 (derivative).
// tests/test_energy.cpp re-fits and checks the fit stays below these.
const std::map<std::string, std::pair<double, double>>& energy_table() {
  static const std::map<std::string, std::pair<double, double>> t = {
      {"schrodinger/linear", {0.1, 0.0}},
      {"airy/linear", {0.1, 0.0}},
      {"schrodinger/cubic", {0.1, 0.05}},
      {"airy/cubic", {0.1, 0.05}},
      {"schrodinger/derivative", {0.1, 0.05}},
      {"airy/derivative", {0.1, 0.05}},
  };
  return t;
}

const std::map<std::string, std::pair<double, double>>& lipschitz_table() {
  static const std::map<std::string, std::pair<double, double>> t = {
      {"schrodinger/linear", {0.1, 0.0}},
      {"airy/linear", {0.1, 0.0}},
      {"schrodinger/cubic", {0.1, 0.05}},
      {"airy/cubic", {0.1, 0.05}},
      {"schrodinger/derivative", {0.1, 0.05}},
      {"airy/derivative", {0.1, 0.05}},
  };
  return t;
}

EnergyConstants lookup(const std::map<std::string, std::pair<double, double>>& table,
                       const EquationSpec& eq) {
  const std::string fam = equation_family(eq);
  auto it = table.find(fam);
  if (it == table.end())
    throw Error(ErrorCode::InvalidArgument, "no frozen energy constants for family " + fam);
  return {fam, it->second.first, it->second.second, energy_degree(eq)};
}

struct NodeSize {
  double norm = 0, gap = 0, sup_u = 0, sup_du = 0;
};

template <class F>
NodeSize measure(const F& u, double s, const EquationSpec& eq, const CutoffFamily& family,
                 const NormOptions& opts, const SupOptions& sup) {
  NodeSize r;
  const auto rep = uls_norm(u, s, eq.sym, family, opts);
  r.norm = rep.value;
  r.gap = rep.certified_gap;
  const auto a = sup_norm(u, 0, sup), b = sup_norm(u, 1, sup);
  r.sup_u = a.value + a.gap;
  r.sup_du = b.value + b.gap;
  return r;
}

// Upper Riemann sums of C along the nodes.
std::vector<double> integrate_upper(const std::vector<double>& t, const std::vector<double>& c) {
  std::vector<double> I(t.size(), 0.0);
  for (std::size_t k = 1; k < t.size(); ++k)
    I[k] = I[k - 1] + (t[k] - t[k - 1]) * std::max(c[k - 1], c[k]);
  return I;
}

}  // namespace

EnergyConstants frozen_energy_constants(const EquationSpec& eq) { return lookup(energy_table(), eq); }
EnergyConstants frozen_lipschitz_constants(const EquationSpec& eq) { return lookup(lipschitz_table(), eq); }

template <class F>
std::vector<EnergyRecord> energy_diagnostics(const Trajectory<F>& traj, const EquationSpec& eq,
                                             const EnergyConstants& C, const CutoffFamily& family,
                                             const NormOptions& opts, bool throw_on_violation,
                                             const SupOptions& sup) {
  const std::size_t n = traj.states.size();
  std::vector<NodeSize> sz(n);
  NormOptions o = opts;
  // One block range for the whole run keeps the norms comparable.
  if (!o.n_max) {
    Dyadic top = 1;
    for (const auto& u : traj.states) top = std::max(top, dyadic_cover(max_frequency(u)));
    o.n_max = top;
  }
  parallel_for(n, [&](std::size_t k) { sz[k] = measure(traj.states[k], eq.s, eq, family, o, sup); });
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = C.eval(sz[k].sup_u, sz[k].sup_du);
  const auto I = integrate_upper(traj.times, c);
  std::vector<EnergyRecord> out(n);
  const double base = std::pow(sz[0].norm + sz[0].gap, 2);
  for (std::size_t k = 0; k < n; ++k) {
    auto& r = out[k];
    r.t = traj.times[k];
    r.norm = sz[k].norm;
    r.norm_sq = sz[k].norm * sz[k].norm;
    r.bound = base * std::exp(I[k]);
    r.sup_u = sz[k].sup_u;
    r.sup_du = sz[k].sup_du;
    r.ok = r.norm_sq <= r.bound * (1 + 1e-12);
    if (!r.ok && throw_on_violation)
      throw Error(ErrorCode::BoundViolated,
                  "energy bound fails at t = " + std::to_string(r.t) + " (" + C.family + ")");
  }
  return out;
}

template <class F>
std::vector<EnergyRecord> lipschitz_diagnostics(const Trajectory<F>& u, const Trajectory<F>& v,
                                                const EquationSpec& eq, const EnergyConstants& C,
                                                const CutoffFamily& family, const NormOptions& opts,
                                                bool throw_on_violation, const SupOptions& sup) {
  const std::size_t n = u.states.size();
  if (v.states.size() != n) throw Error(ErrorCode::InvalidArgument, "trajectories differ in length");
  NormOptions o = opts;
  if (!o.n_max) {
    Dyadic top = 1;
    for (std::size_t k = 0; k < n; ++k)
      top = std::max({top, dyadic_cover(max_frequency(u.states[k])), dyadic_cover(max_frequency(v.states[k]))});
    o.n_max = top;
  }
  std::vector<NodeSize> su(n), sv(n), sd(n);
  parallel_for(n, [&](std::size_t k) {
    su[k] = measure(u.states[k], eq.s, eq, family, o, sup);
    sv[k] = measure(v.states[k], eq.s, eq, family, o, sup);
    sd[k] = measure(subtract(u.states[k], v.states[k]), 0.0, eq, family, o, sup);
  });
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] = C.eval(std::max(su[k].sup_u, sv[k].sup_u), std::max(su[k].sup_du, sv[k].sup_du));
  const auto I = integrate_upper(u.times, c);
  std::vector<EnergyRecord> out(n);
  const double base = sd[0].norm + sd[0].gap;
  for (std::size_t k = 0; k < n; ++k) {
    auto& r = out[k];
    r.t = u.times[k];
    r.norm = sd[k].norm;
    r.norm_sq = r.norm * r.norm;
    r.bound = base * std::exp(I[k]);
    r.sup_u = std::max(su[k].sup_u, sv[k].sup_u);
    r.sup_du = std::max(su[k].sup_du, sv[k].sup_du);
    r.ok = r.norm <= r.bound * (1 + 1e-12);
    if (!r.ok && throw_on_violation)
      throw Error(ErrorCode::BoundViolated,
                  "Lipschitz bound fails at t = " + std::to_string(r.t) + " (" + C.family + ")");
  }
  return out;
}

double fit_linear_constant(const std::vector<EnergyRecord>& recs, bool squared) {
  if (recs.empty()) return 0.0;
  // base recovered from the bound at t = 0
  const double base = recs[0].bound;
  double c = 0.0;
  for (const auto& r : recs) {
    if (r.t <= 0) continue;
    const double lhs = squared ? r.norm_sq : r.norm;
    if (lhs <= 0 || base <= 0) continue;
    c = std::max(c, std::log(lhs / base) / r.t);
  }
  return c;
}

double fit_nonlinear_constant(const std::vector<EnergyRecord>& recs, double c_lin, int degree,
                              bool squared) {
  if (recs.empty()) return 0.0;
  const double base = recs[0].bound;
  EnergyConstants p{"", 0.0, 1.0, degree};
  double I = 0.0, c = 0.0;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    const double dt = recs[k].t - recs[k - 1].t;
    I += dt * std::max(p.eval(recs[k - 1].sup_u, recs[k - 1].sup_du), p.eval(recs[k].sup_u, recs[k].sup_du));
    const double lhs = squared ? recs[k].norm_sq : recs[k].norm;
    if (lhs <= 0 || base <= 0 || I <= 0) continue;
    c = std::max(c, (std::log(lhs / base) - c_lin * recs[k].t) / I);
  }
  return c;
}

ApCheck ap_propagation_check(const TrigPoly& u0, const EquationSpec& eq, const SolveConfig& cfg,
                             std::optional<Dyadic> M) {
  ApCheck r;
  if (!eq.nl.q_is_zero() && !M) M = cfg.M_list.empty() ? Dyadic{64} : cfg.M_list.front();
  r.trajectory = M ? galerkin_solve(u0, eq, *M, cfg) : picard_solve(u0, eq, cfg);
  for (const auto& s : r.trajectory.states) {
    r.spectrum_growth.push_back(s.size());
    if (!tp_span_contains(u0.module(), s)) ++r.violations;
  }
  r.contained = r.violations == 0;
  return r;
}

nlohmann::json equation_to_json(const EquationSpec& eq) {
  nlohmann::json j = eq.nl;
  j["symbol"] = eq.sym.name;
  j["s"] = eq.s;
  return j;
}

EquationSpec equation_from_json(const nlohmann::json& j) {
  EquationSpec eq;
  try {
    eq.sym = parse_symbol(j.value("symbol", std::string("schrodinger")));
    eq.nl = j.get<NonlinearitySpec>();
    eq.s = j.value("s", 1.0);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad equation json: ") + e.what());
  }
  eq.validate();
  return eq;
}

#define ULS_INSTANTIATE(F)                                                                          \
  template Trajectory<F> picard_solve(const F&, const EquationSpec&, const SolveConfig&);           \
  template Trajectory<F> galerkin_solve(const F&, const EquationSpec&, Dyadic, const SolveConfig&); \
  template Trajectory<F> solve_with_time_search(const F&, const EquationSpec&, const SolveConfig&,  \
                                                std::optional<Dyadic>);                             \
  template void attach_diagnostics(Trajectory<F>&, const EquationSpec&, const CutoffFamily&,        \
                                   const NormOptions&, const SupOptions&);                          \
  template std::vector<CauchyRow> galerkin_cauchy_study(const F&, const EquationSpec&,              \
                                                        const SolveConfig&, const CutoffFamily&,    \
                                                        const NormOptions&);                        \
  template std::vector<EnergyRecord> energy_diagnostics(const Trajectory<F>&, const EquationSpec&, \
                                                        const EnergyConstants&,                     \
                                                        const CutoffFamily&, const NormOptions&,    \
                                                        bool, const SupOptions&);                   \
  template std::vector<EnergyRecord> lipschitz_diagnostics(                                         \
      const Trajectory<F>&, const Trajectory<F>&, const EquationSpec&, const EnergyConstants&,      \
      const CutoffFamily&, const NormOptions&, bool, const SupOptions&);

ULS_INSTANTIATE(TrigPoly)
ULS_INSTANTIATE(GridField)

}  // namespace uls
