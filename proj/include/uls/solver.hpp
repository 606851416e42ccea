#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "uls/norms.hpp"
#include "uls/polynomial.hpp"
#include "uls/propagator.hpp"

namespace uls {

struct EquationSpec {
  DispersionSymbol sym;
  NonlinearitySpec nl;
  double s = 1.0;

  bool reality() const { return nl.reality; }
  void validate() const;
};

enum class Backend { Trig, Grid };

struct SolveConfig {
  double T = 0.1;
  std::size_t n_time_nodes = 21;  // including t = 0 and t = T
  double picard_tol = 1e-12;
  int picard_max_iters = 60;
  double prune_floor = 0.0;
  std::vector<Dyadic> M_list;
  Backend backend = Backend::Trig;
  int max_halvings = 8;
  // Dropped mass over the final sweep must stay below this fraction of the
  // data's Wiener norm.
  double dropped_mass_budget = 1e-8;
};

struct NodeDiagnostics {
  double t = 0.0;
  double norm_s = 0.0;    // l^inf H^s, filled by attach_diagnostics
  double norm_c1 = 0.0;   // C^1, filled by attach_diagnostics
  std::size_t spectrum_size = 0;
  double pruned_mass = 0.0;
};

template <class F>
struct Trajectory {
  std::vector<double> times;
  std::vector<F> states;
  std::vector<NodeDiagnostics> diag;
  int iterations = 0;
  double final_residual = 0.0;  // Wiener-block bound of the last Picard update
  double dropped_mass = 0.0;
  bool converged = false;
  double T_requested = 0.0;
  double T_achieved = 0.0;
  int halvings = 0;
};

template <class F>
Trajectory<F> picard_solve(const F& u0, const EquationSpec& eq, const SolveConfig& cfg);

template <class F>
Trajectory<F> galerkin_solve(const F& u0, const EquationSpec& eq, Dyadic M, const SolveConfig& cfg);

// Halves T on NoContraction (up to cfg.max_halvings times).
template <class F>
Trajectory<F> solve_with_time_search(const F& u0, const EquationSpec& eq, const SolveConfig& cfg,
                                     std::optional<Dyadic> M = std::nullopt);

template <class F>
void attach_diagnostics(Trajectory<F>& traj, const EquationSpec& eq, const CutoffFamily& family,
                        const NormOptions& opts = {}, const SupOptions& sup = {});

struct CauchyRow {
  Dyadic M = 0;
  Dyadic M_next = 0;
  double sup_diff = 0.0;  // sup over nodes of ||u^{(M_next)} - u^{(M)}||_{l^inf H^0}
};

template <class F>
std::vector<CauchyRow> galerkin_cauchy_study(const F& u0, const EquationSpec& eq,
                                             const SolveConfig& cfg, const CutoffFamily& family,
                                             const NormOptions& opts = {});

// ---- energy diagnostics ----

// C(a, b) = c_lin + c_nl * sum_{1 <= i + j <= degree} a^i b^j
struct EnergyConstants {
  std::string family;
  double c_lin = 0.0;
  double c_nl = 0.0;
  int degree = 0;

  double eval(double a, double b) const;
  nlohmann::json to_json() const;
};

// Equation family key: "<symbol>/<linear|cubic|derivative|general>".
std::string equation_family(const EquationSpec& eq);
// Frozen constants for the energy bound; throws InvalidArgument for an
// uncalibrated family.
EnergyConstants frozen_energy_constants(const EquationSpec& eq);
EnergyConstants frozen_lipschitz_constants(const EquationSpec& eq);
int energy_degree(const EquationSpec& eq);

struct EnergyRecord {
  double t = 0.0;
  double norm = 0.0;
  double norm_sq = 0.0;
  double bound = 0.0;
  double sup_u = 0.0;
  double sup_du = 0.0;
  bool ok = true;
};

// Asserts norm(t)^2 <= (norm(0) + gap(0))^2 exp(int_0^t C); throws
// BoundViolated when `throw_on_violation`.
template <class F>
std::vector<EnergyRecord> energy_diagnostics(const Trajectory<F>& traj, const EquationSpec& eq,
                                             const EnergyConstants& C, const CutoffFamily& family,
                                             const NormOptions& opts = {},
                                             bool throw_on_violation = true,
                                             const SupOptions& sup = {});

// ||u - v||_{l^inf H^0}(t) <= (||u0 - v0|| + gap) exp(int C) with sup norms
// taken as the max over both solutions.
template <class F>
std::vector<EnergyRecord> lipschitz_diagnostics(const Trajectory<F>& u, const Trajectory<F>& v,
                                                const EquationSpec& eq, const EnergyConstants& C,
                                                const CutoffFamily& family,
                                                const NormOptions& opts = {},
                                                bool throw_on_violation = true,
                                                const SupOptions& sup = {});

// Smallest constants (within the given degree) consistent with the records'
// growth, c_lin fixed.
double fit_nonlinear_constant(const std::vector<EnergyRecord>& recs, double c_lin, int degree,
                              bool squared);
double fit_linear_constant(const std::vector<EnergyRecord>& recs, bool squared);

// ---- almost periodicity ----

struct ApCheck {
  bool contained = true;
  std::size_t violations = 0;
  std::vector<std::size_t> spectrum_growth;
  Trajectory<TrigPoly> trajectory;
};

ApCheck ap_propagation_check(const TrigPoly& u0, const EquationSpec& eq, const SolveConfig& cfg,
                             std::optional<Dyadic> M = std::nullopt);

nlohmann::json equation_to_json(const EquationSpec& eq);
EquationSpec equation_from_json(const nlohmann::json& j);

}  // namespace uls
