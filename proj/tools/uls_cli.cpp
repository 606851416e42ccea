#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "uls/config.hpp"
#include "uls/envelope.hpp"
#include "uls/errors.hpp"
#include "uls/parallel.hpp"
#include "uls/verify.hpp"

using json = nlohmann::json;
using namespace uls;

namespace {

struct Paths {
  std::string dir, prefix;
  std::string file(const std::string& sub, const std::string& ext) const {
    return (std::filesystem::path(dir) / (prefix + "_" + sub + ext)).string();
  }
};

Paths prepare_out(const RunConfig& c, const std::string& override_dir) {
  Paths p{override_dir.empty() ? c.out_dir : override_dir, c.prefix};
  std::filesystem::create_directories(p.dir);
  return p;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "'" + path + "' is not valid JSON: " + e.what());
  }
}

template <class F>
void save_state(const F& u, const std::string& base) {
  if constexpr (std::is_same_v<F, TrigPoly>) write_json(base + ".json", tp_to_json(u));
  else gf_write_binary(u, base + ".bin");
}

template <class F>
void check_backend(const RunConfig& c) {
  const bool grid = std::is_same_v<F, GridField>;
  if (grid != (c.solve.backend == Backend::Grid))
    throw Error(ErrorCode::InvalidArgument, "solve.backend does not match the data kind");
}

// ---- subcommands ----

int cmd_validate_symbol(const std::string& name, int kmax, int jmax) {
  const DispersionSymbol sym = parse_symbol(name);
  const auto grid = dyadic_validation_grid(jmax);
  const auto r = validate_symbol(sym, kmax, grid);
  json b = json::array();
  for (const auto& d : r.bounds)
    b.push_back({{"order", d.order}, {"constant", d.constant}, {"worst_point", d.worst_point}});
  json out{{"symbol", sym.name}, {"sigma", sym.sigma}, {"preserves_reality", sym.preserves_reality},
           {"bounds", b}, {"fitted_order", r.fitted_order}, {"fitted_sigma", r.fitted_sigma},
           {"worst_ratio", r.worst_ratio}, {"max_real_part", r.max_real_part}, {"passed", r.passed},
           {"config_hash", config_hash({{"symbol", name}, {"kmax", kmax}, {"jmax", jmax}})}};
  std::cout << out.dump(2) << "\n";
  return r.passed ? 0 : 1;
}

int cmd_norm(const std::string& data_path, double s, const std::string& symbol, const std::string& mode,
             const std::string& window, bool fattened, bool variants, const std::string& csv) {
  const json data = read_json_file(data_path);
  const DispersionSymbol sym = parse_symbol(symbol);
  const NormOptions opts = norm_options_from_json({{"mode", mode}, {"window", window}});
  const CutoffFamily fam = CutoffFamily::for_symbol(sym);
  const json key{{"data", data}, {"s", s}, {"symbol", symbol}, {"norms", norm_options_to_json(opts)},
                 {"fattened", fattened}};
  const std::string hash = config_hash(key);
  const Field u = field_from_json(data);
  json out = std::visit(
      [&](const auto& f) {
        const NormReport rep = uls_norm(f, s, sym, fam, opts, fattened);
        json j = rep.to_json();
        if (variants) j["variants"] = equiv_norm_variants(f, s, sym, fam, opts);
        if (!csv.empty()) {
          CsvWriter w(csv, hash, "norm", {"N", "weighted_value", "center", "gap"});
          for (const auto& [N, b] : rep.per_block) w.row({double(N), b.value, b.center, b.gap});
          w.close();
        }
        return j;
      },
      u);
  out["config_hash"] = hash;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_evolve_linear(const RunConfig& c, const std::string& dir) {
  const Paths p = prepare_out(c, dir);
  const Field u = field_from_json(c.data, c.seed);
  const auto fam = CutoffFamily::for_symbol(c.eq.sym);
  std::vector<double> times;
  for (std::size_t k = 0; k < c.solve.n_time_nodes; ++k)
    times.push_back(c.solve.T * double(k) / double(c.solve.n_time_nodes - 1));
  const auto ratios =
      std::visit([&](const auto& f) { return linear_energy_sweep(f, c.eq.sym, c.eq.s, times, fam, c.norms); }, u);
  CsvWriter w(p.file("linear", ".csv"), c.hash(), "evolve-linear", {"t", "norm_ratio"});
  double mx = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    w.row({times[k], ratios[k]});
    mx = std::max(mx, ratios[k]);
  }
  w.close();
  json s{{"config_hash", c.hash()}, {"max_ratio", mx}, {"csv", p.file("linear", ".csv")}};
  write_json(p.file("linear", ".json"), s);
  std::cout << s.dump(2) << "\n";
  return 0;
}

template <class F>
int evolve_impl(const RunConfig& c, const F& u0, const Paths& p) {
  check_backend<F>(c);
  auto traj = solve_with_time_search(u0, c.eq, c.solve, c.M);
  const auto fam = CutoffFamily::for_symbol(c.eq.sym);
  attach_diagnostics(traj, c.eq, fam, c.norms, c.sup);
  std::vector<EnergyRecord> recs;
  json energy = nullptr;
  bool energy_ok = true;
  try {
    const auto C = frozen_energy_constants(c.eq);
    recs = energy_diagnostics(traj, c.eq, C, fam, c.norms, false, c.sup);
    for (const auto& r : recs) energy_ok = energy_ok && r.ok;
    energy = C.to_json();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidArgument) throw;
  }
  CsvWriter w(p.file("evolve", ".csv"), c.hash(), "evolve",
              {"t", "norm_s", "norm_c1", "spectrum_size", "pruned_mass", "energy_norm_sq",
               "energy_bound", "energy_ok"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& d = traj.diag[k];
    const double nsq = recs.empty() ? NAN : recs[k].norm_sq;
    const double bd = recs.empty() ? NAN : recs[k].bound;
    const double ok = recs.empty() ? NAN : (recs[k].ok ? 1.0 : 0.0);
    w.row({traj.times[k], d.norm_s, d.norm_c1, double(d.spectrum_size), d.pruned_mass, nsq, bd, ok});
  }
  w.close();
  save_state(traj.states.back(), p.file("final", ""));
  json s{{"config_hash", c.hash()},
         {"family", equation_family(c.eq)},
         {"converged", traj.converged},
         {"iterations", traj.iterations},
         {"final_residual", traj.final_residual},
         {"dropped_mass", traj.dropped_mass},
         {"T_requested", traj.T_requested},
         {"T_achieved", traj.T_achieved},
         {"halvings", traj.halvings},
         {"energy_constants", energy},
         {"energy_ok", recs.empty() ? json(nullptr) : json(energy_ok)},
         {"csv", p.file("evolve", ".csv")}};
  write_json(p.file("evolve", ".json"), s);
  std::cout << s.dump(2) << "\n";
  if (!energy_ok) throw Error(ErrorCode::BoundViolated, "energy bound violated (see " + p.file("evolve", ".csv") + ")");
  return traj.converged ? 0 : 1;
}

int cmd_evolve(const RunConfig& c, const std::string& dir) {
  const Paths p = prepare_out(c, dir);
  const Field u = field_from_json(c.data, c.seed);
  return std::visit([&](const auto& f) { return evolve_impl(c, f, p); }, u);
}

int cmd_cauchy(const RunConfig& c, const std::string& dir) {
  const Paths p = prepare_out(c, dir);
  const Field u = field_from_json(c.data, c.seed);
  const auto fam = CutoffFamily::for_symbol(c.eq.sym);
  const auto rows = std::visit(
      [&](const auto& f) {
        check_backend<std::decay_t<decltype(f)>>(c);
        return galerkin_cauchy_study(f, c.eq, c.solve, fam, c.norms);
      },
      u);
  CsvWriter w(p.file("cauchy", ".csv"), c.hash(), "cauchy-study", {"M", "M_next", "sup_diff"});
  bool dec = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    w.row({double(rows[i].M), double(rows[i].M_next), rows[i].sup_diff});
    if (i > 0) dec = dec && rows[i].sup_diff < rows[i - 1].sup_diff;
  }
  w.close();
  json s{{"config_hash", c.hash()}, {"strictly_decreasing", dec}, {"csv", p.file("cauchy", ".csv")}};
  write_json(p.file("cauchy", ".json"), s);
  std::cout << s.dump(2) << "\n";
  return 0;
}

int cmd_envelope(const RunConfig& c, const std::string& dir) {
  const Paths p = prepare_out(c, dir);
  const Field u = field_from_json(c.data, c.seed);
  const auto fam = CutoffFamily::for_symbol(c.eq.sym);
  const EnvelopeStudy st = std::visit(
      [&](const auto& f) {
        check_backend<std::decay_t<decltype(f)>>(c);
        return envelope_propagation_study(f, c.eq, c.solve, c.eq.s, c.envelope_delta, fam, c.norms, c.M);
      },
      u);
  const EnvelopeCheck chk = check_envelope(st.envelope);
  CsvWriter w(p.file("envelope", ".csv"), c.hash(), "envelope", {"N", "c", "sup_ratio", "data_ratio"});
  for (const auto& r : st.rows) w.row({double(r.N), r.c, r.sup_ratio, r.data_ratio});
  w.close();
  json s{{"config_hash", c.hash()},
         {"envelope", st.envelope.to_json()},
         {"energy_property", chk.energy},
         {"slowly_varying", chk.slowly_varying},
         {"sharp", chk.sharp},
         {"sharp_ratio", chk.sharp_ratio},
         {"worst_slow_ratio", chk.worst_slow_ratio},
         {"max_ratio", st.max_ratio},
         {"max_data_ratio", st.max_data_ratio},
         {"T_achieved", st.T_achieved},
         {"csv", p.file("envelope", ".csv")}};
  write_json(p.file("envelope", ".json"), s);
  std::cout << s.dump(2) << "\n";
  return 0;
}

int cmd_ap_check(const RunConfig& c, const std::string& dir) {
  const Paths p = prepare_out(c, dir);
  const Field u = field_from_json(c.data, c.seed);
  if (!std::holds_alternative<TrigPoly>(u))
    throw Error(ErrorCode::InvalidArgument, "ap-check needs trig data");
  const ApCheck r = ap_propagation_check(std::get<TrigPoly>(u), c.eq, c.solve, c.M);
  const TrigPoly& u0 = std::get<TrigPoly>(u);
  CsvWriter w(p.file("ap", ".csv"), c.hash(), "ap-check", {"t", "spectrum_size", "contained"});
  for (std::size_t k = 0; k < r.trajectory.times.size(); ++k)
    w.row({r.trajectory.times[k], double(r.spectrum_growth[k]),
           tp_span_contains(u0.module(), r.trajectory.states[k]) ? 1.0 : 0.0});
  w.close();
  json s{{"config_hash", c.hash()}, {"contained", r.contained}, {"violations", r.violations},
         {"converged", r.trajectory.converged}, {"csv", p.file("ap", ".csv")}};
  write_json(p.file("ap", ".json"), s);
  std::cout << s.dump(2) << "\n";
  if (!r.contained) throw Error(ErrorCode::ModuleMismatch, "spectrum left the data module");
  return 0;
}

int cmd_verify(const std::string& name, int trials, std::uint64_t seed, const std::string& report) {
  std::vector<InequalityCase> cases;
  if (name.empty()) {
    for (const auto& n : verify_registry()) cases.push_back(run_case(n, trials, seed));
  } else {
    cases.push_back(run_case(name, trials, seed));
  }
  bool ok = true;
  json arr = json::array();
  for (const auto& c : cases) {
    ok = ok && c.pass;
    arr.push_back(c.to_json());
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  max=" << c.max_ratio
              << " median=" << c.median_ratio << " n=" << c.count;
    if (c.has_fit) std::cerr << " slope=" << c.slope << " r2=" << c.r2;
    std::cerr << "\n";
  }
  json out{{"seed", seed},
           {"all_pass", ok},
           {"cases", arr},
           {"config_hash", config_hash({{"case", name}, {"trials", trials}, {"seed", seed}})}};
  if (!report.empty()) write_json(report, out);
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_plot(const std::string& csv, const std::string& x, const std::string& y, bool logx, bool logy,
             bool fit, const std::string& title, const std::string& out) {
  const CsvTable t = read_csv(csv);
  PlotSpec spec;
  spec.x = x;
  std::stringstream ss(y);
  std::string col;
  while (std::getline(ss, col, ',')) spec.y.push_back(col);
  spec.logx = logx;
  spec.logy = logy;
  spec.fit = fit;
  spec.title = title;
  std::string hash = "unknown";
  for (const auto& l : t.comments) {
    const auto pos = l.find("config_hash=");
    if (pos != std::string::npos) hash = l.substr(pos + 12, 16);
  }
  const std::string svg = render_svg(t, spec, hash);
  std::ofstream o(out);
  if (!o) throw Error(ErrorCode::InvalidArgument, "cannot write '" + out + "'");
  o << svg;
  std::cout << json{{"svg", out}, {"config_hash", hash}}.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniformly local Sobolev toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* vs = app.add_subcommand("validate-symbol", "check a dispersion symbol's derivative bounds");
  std::string vs_symbol;
  int vs_kmax = 6, vs_jmax = 10;
  vs->add_option("--symbol", vs_symbol, "schrodinger, airy, poly:[c0,c1,...]")->required();
  vs->add_option("--kmax", vs_kmax)->check(CLI::Range(0, 6));
  vs->add_option("--jmax", vs_jmax)->check(CLI::Range(1, 40));

  auto* nm = app.add_subcommand("norm", "evaluate the l^inf H^s norm of a data file");
  std::string nm_data, nm_symbol = "schrodinger", nm_mode = "translation", nm_window = "sharp", nm_csv;
  double nm_s = 0.0;
  bool nm_fat = false, nm_var = false;
  nm->add_option("--data", nm_data, "data spec JSON")->required();
  nm->add_option("--s", nm_s);
  nm->add_option("--symbol", nm_symbol);
  nm->add_option("--mode", nm_mode)->check(CLI::IsMember({"lattice", "translation"}));
  nm->add_option("--window", nm_window)->check(CLI::IsMember({"sharp", "mollified"}));
  nm->add_flag("--fattened", nm_fat, "use P~_N in place of P_N");
  nm->add_flag("--variants", nm_var, "also report the equivalent variants");
  nm->add_option("--csv", nm_csv, "per-block CSV");

  std::string cfg_path, out_dir;
  auto add_cfg = [&](CLI::App* a) {
    a->add_option("--config", cfg_path, "experiment config (schema v1)")->required();
    a->add_option("--out-dir", out_dir, "override output.dir");
  };
  auto* el = app.add_subcommand("evolve-linear", "linear propagator norm ratios");
  add_cfg(el);
  auto* ev = app.add_subcommand("evolve", "nonlinear evolution with diagnostics");
  add_cfg(ev);
  auto* cs = app.add_subcommand("cauchy-study", "Galerkin differences across M_list");
  add_cfg(cs);
  auto* en = app.add_subcommand("envelope", "frequency envelope propagation study");
  add_cfg(en);
  auto* ap = app.add_subcommand("ap-check", "spectrum containment along the evolution");
  add_cfg(ap);

  auto* vf = app.add_subcommand("verify", "randomized inequality suite");
  std::string vf_case, vf_report;
  int vf_trials = 0;
  std::uint64_t vf_seed = 0;
  vf->add_option("--case", vf_case);
  vf->add_option("--trials", vf_trials)->check(CLI::NonNegativeNumber);
  vf->add_option("--seed", vf_seed);
  vf->add_option("--report", vf_report, "write the JSON report here too");

  auto* pl = app.add_subcommand("plot", "render a diagnostics CSV to SVG");
  std::string pl_csv, pl_x, pl_y, pl_out, pl_title;
  bool pl_logx = false, pl_logy = false, pl_fit = false;
  pl->add_option("--csv", pl_csv)->required();
  pl->add_option("--x", pl_x)->required();
  pl->add_option("--y", pl_y, "comma-separated columns")->required();
  pl->add_option("--out", pl_out)->required();
  pl->add_option("--title", pl_title);
  pl->add_flag("--logx", pl_logx);
  pl->add_flag("--logy", pl_logy);
  pl->add_flag("--fit", pl_fit, "overlay least-squares lines with slopes");

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_thread_count(static_cast<unsigned>(threads));
    if (*vs) return cmd_validate_symbol(vs_symbol, vs_kmax, vs_jmax);
    if (*nm) return cmd_norm(nm_data, nm_s, nm_symbol, nm_mode, nm_window, nm_fat, nm_var, nm_csv);
    if (*el) return cmd_evolve_linear(load_config(cfg_path), out_dir);
    if (*ev) return cmd_evolve(load_config(cfg_path), out_dir);
    if (*cs) return cmd_cauchy(load_config(cfg_path), out_dir);
    if (*en) return cmd_envelope(load_config(cfg_path), out_dir);
    if (*ap) return cmd_ap_check(load_config(cfg_path), out_dir);
    if (*vf) return cmd_verify(vf_case, vf_trials, vf_seed, vf_report);
    if (*pl) return cmd_plot(pl_csv, pl_x, pl_y, pl_logx, pl_logy, pl_fit, pl_title, pl_out);
  } catch (const Error& e) {
    std::cerr << json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
