// One PASS/FAIL line per acceptance criterion; exit status 1 on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "coef_ode.hpp"
#include "test_util.hpp"
#include "uls/config.hpp"
#include "uls/envelope.hpp"
#include "uls/errors.hpp"
#include "uls/solver.hpp"
#include "uls/verify.hpp"

using namespace uls;
using uls::testing::cos_cos;
using uls::testing::integrate_truncated;
namespace fs = std::filesystem;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int k, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream msg;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(msg);
  } catch (const std::exception& e) {
    msg << " exception: " << e.what();
  }
  if (!ok) ++failures;
  std::printf("ACCEPTANCE %d %s%s (%.1f s)\n", k, ok ? "PASS" : "FAIL", msg.str().c_str(), seconds_since(t0));
  std::fflush(stdout);
}

FrequencyModule gens(std::vector<double> g) { return FrequencyModule(std::move(g)); }

TrigPoly term(const FrequencyModule& m, FreqVec n, cplx a) { return TrigPoly::monomial(m, n, a); }

EquationSpec cubic(const DispersionSymbol& sym) {
  EquationSpec eq;
  eq.sym = sym;
  eq.nl.Nl = {{cplx(0, -1), 2, 1}};
  return eq;
}

SolveConfig base_cfg(double T, std::size_t nodes) {
  SolveConfig c;
  c.T = T;
  c.n_time_nodes = nodes;
  c.picard_tol = 1e-14;
  return c;
}


std::vector<fs::path> shipped_configs() {
  std::vector<fs::path> v;
  for (const auto& e : fs::directory_iterator(fs::path(ULS_SOURCE_DIR) / "configs"))
    if (e.path().extension() == ".json") v.push_back(e.path());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

int main() {
  report(1, [](std::ostringstream& m) {
    const auto mod = gens({1.0});
    const auto eq = cubic(make_schrodinger());
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = picard_solve(term(mod, {1}, 0.1), eq, base_cfg(0.5, 21));
    const double secs = seconds_since(t0);
    double err = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const double t = tr.times[k];
      const cplx a = 0.1 * std::exp(-t * eq.sym(1.0)) * std::exp(cplx(0, -0.01 * t));
      err = std::max(err, tp_max_coef_diff(tr.states[k], term(mod, {1}, a)));
    }
    m << " single-mode max coef error " << err << " (< 1e-8), solve " << secs << " s (< 5)";
    return tr.converged && err < 1e-8 && secs < 5.0;
  });

  report(2, [](std::ostringstream& m) {
    const auto mod = gens({1.0, std::sqrt(2.0)});
    const TrigPoly u0 = tp_add(term(mod, {1, 0}, 0.1), term(mod, {0, 1}, 0.1));
    const auto eq = cubic(make_schrodinger());
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = picard_solve(u0, eq, base_cfg(0.2, 21));
    const double secs = seconds_since(t0);
    // H^0 distance through the Wiener bound, which dominates the windowed norm.
    const auto ref = integrate_truncated(u0, eq, 0.2, 5);
    const double d = uls_norm_wiener_bound(tp_sub(tr.states.back(), ref), 0.0, CutoffFamily{1.0, true});
    m << " two-mode vs adaptive ODE (depth 5) l^inf H^0 <= " << d << " (< 1e-6), solve " << secs << " s (< 60)";
    return tr.converged && d < 1e-6 && secs < 60.0;
  });

  report(3, [](std::ostringstream& m) {
    auto c1 = base_cfg(0.05, 11);
    c1.prune_floor = 1e-14;
    const auto a = ap_propagation_check(cos_cos(), cubic(make_schrodinger()), c1, Dyadic{64});
    EquationSpec dn;
    dn.sym = make_schrodinger();
    dn.nl.Q = {0, 1};
    auto c2 = base_cfg(0.02, 11);
    c2.prune_floor = 1e-14;
    const auto b = ap_propagation_check(cos_cos(), dn, c2, Dyadic{64});
    m << " cubic: " << a.violations << " violations, final spectrum " << a.spectrum_growth.back()
      << "; derivative: " << b.violations << " violations, final spectrum " << b.spectrum_growth.back();
    return a.contained && b.contained && a.violations == 0 && b.violations == 0;
  });

  report(4, [](std::ostringstream& m) {
    const RunConfig c = load_config((fs::path(ULS_SOURCE_DIR) / "configs" / "grid_cauchy.json").string());
    const auto u = std::get<GridField>(field_from_json(c.data, c.seed));
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = galerkin_cauchy_study(u, c.eq, c.solve, CutoffFamily::for_symbol(c.eq.sym), c.norms);
    const double secs = seconds_since(t0);
    bool dec = rows.size() == 3;
    m << " sup diffs";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      m << " " << rows[i].M << "->" << rows[i].M_next << ":" << rows[i].sup_diff;
      if (i > 0) dec = dec && rows[i].sup_diff < rows[i - 1].sup_diff;
    }
    m << (dec ? " strictly decreasing" : " NOT strictly decreasing") << ", " << secs << " s (< 600)";
    return dec && secs < 600.0;
  });

  report(5, [](std::ostringstream& m) {
    const auto r = run_case("linear_energy", 20, 0);
    m << " max norm ratio " << r.max_ratio << " (<= 3) over " << r.count << " samples";
    return r.pass && r.max_ratio <= 3.0;
  });

  report(6, [](std::ostringstream& m) {
    const auto r = run_case("commutator", 100, 0);
    m << " fitted slope " << r.slope << " (-1 +- 0.15), r2 " << r.r2;
    return r.has_fit && std::abs(r.slope + 1.0) <= 0.15;
  });

  report(7, [](std::ostringstream& m) {
    bool ok = true;
    for (const auto& sym : {make_schrodinger(), make_airy()}) {
      std::vector<double> x, y;
      for (Dyadic N = 4; N <= 256; N *= 2) {
        x.push_back(std::log(double(N)));
        y.push_back(std::log(kernel_l1_estimate(sym, N).value));
      }
      const double n = double(x.size());
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i]; sxx += x[i] * x[i]; sxy += x[i] * y[i];
      }
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      m << " " << sym.name << " slope " << slope << " (" << sym.sigma << " +- 0.1)";
      ok = ok && std::abs(slope - sym.sigma) <= 0.1;
    }
    return ok;
  });

  report(8, [](std::ostringstream& m) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = run_all(0);
    const double secs = seconds_since(t0);
    std::size_t passed = 0;
    for (const auto& c : s.cases) {
      if (c.pass) ++passed;
      else m << " failed:" << c.name;
    }
    m << " " << passed << "/" << s.cases.size() << " cases, " << secs << " s (< 900)";
    return s.all_pass && secs < 900.0;
  });

  report(9, [](std::ostringstream& m) {
    bool ok = true;
    for (const auto& path : shipped_configs()) {
      const RunConfig c = load_config(path.string());
      const auto fam = CutoffFamily::for_symbol(c.eq.sym);
      const auto C = frozen_energy_constants(c.eq);
      const Field u = field_from_json(c.data, c.seed);
      const auto recs = std::visit(
          [&](const auto& f) {
            const auto tr = solve_with_time_search(f, c.eq, c.solve, c.M);
            return energy_diagnostics(tr, c.eq, C, fam, c.norms, false, c.sup);
          },
          u);
      double worst = 0.0;
      bool all = true;
      for (const auto& r : recs) {
        all = all && r.ok;
        if (r.bound > 0) worst = std::max(worst, r.norm_sq / r.bound);
      }
      m << " " << path.stem().string() << ":" << (all ? "ok" : "VIOLATED") << "(" << worst << ")";
      ok = ok && all;
    }
    return ok;
  });

  report(10, [](std::ostringstream& m) {
    const RunConfig c =
        load_config((fs::path(ULS_SOURCE_DIR) / "configs" / "envelope_small_cubic.json").string());
    const auto u = std::get<TrigPoly>(field_from_json(c.data, c.seed));
    const auto fam = CutoffFamily::for_symbol(c.eq.sym);
    bool ok = true;
    for (double s : {0.0, 1.0}) {
      const auto chk = check_envelope(build_envelope(u, s, c.envelope_delta, c.eq.sym, fam, c.norms));
      m << " s=" << s << " sharp " << chk.sharp_ratio << " slow " << chk.worst_slow_ratio;
      ok = ok && chk.energy && chk.slowly_varying && chk.sharp;
    }
    const auto st = envelope_propagation_study(u, c.eq, c.solve, c.eq.s, c.envelope_delta, fam, c.norms, c.M);
    m << "; study max ratio " << st.max_ratio << " (<= 2) at T " << st.T_achieved;
    return ok && st.max_ratio <= 2.0 && st.T_achieved >= c.solve.T;
  });

  return failures ? 1 : 0;
}
