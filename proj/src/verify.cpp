#include "uls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string_view>
#include <tuple>

#include "uls/errors.hpp"
#include "uls/gridfield.hpp"
#include "uls/parallel.hpp"
#include "uls/propagator.hpp"
#include "uls/solver.hpp"

namespace uls {

using json = nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Declared criteria shared by every case.
constexpr double kSlopeSlack = 0.15;   // bounded: per-scale max may not grow faster
constexpr double kBoundedMargin = 10;  // upper-half max vs lower-half max
constexpr double kExpTol = 0.15;
constexpr double kExactTol = 1e-10;

// Torus for grid samplers: period 1024.
const double kGridL = 1024.0 / (2.0 * kPi);

const FrequencyModule& two_gen() {
  static const FrequencyModule m({1.0, std::sqrt(2.0)});
  return m;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
  return h;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::string_view name, std::size_t trial) {
  const std::uint64_t h = fnv1a(name);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

// Random trig polynomial over {1, sqrt 2}: K terms with |lambda| in [lo, hi],
// keys m + n sqrt2 with |n| <= 6. Coherent draws put every phase at zero.
TrigPoly random_trig(std::mt19937_64& rng, double lo, double hi, int kmin = 4, int kmax = 32) {
  const double r2 = std::sqrt(2.0);
  std::vector<FreqVec> cands;
  for (int n = -6; n <= 6; ++n) {
    const int m0 = static_cast<int>(std::floor(lo - n * r2)) - 1;
    const int m1 = static_cast<int>(std::ceil(hi - n * r2)) + 1;
    for (int m = m0; m <= m1; ++m) {
      const double lam = m + n * r2;
      if (lam >= lo && lam <= hi) cands.push_back(FreqVec{m, n});
    }
  }
  if (cands.empty()) cands.push_back(FreqVec{static_cast<int>(std::lround(hi)), 0});
  std::uniform_int_distribution<int> kd(kmin, kmax);
  std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
  std::uniform_real_distribution<double> amp(0.1, 1.0), ph(0.0, 2.0 * kPi), u01(0.0, 1.0);
  const bool coherent = u01(rng) < 0.5;
  const int K = kd(rng);
  std::vector<Term> terms;
  for (int k = 0; k < K; ++k) {
    FreqVec key = cands[pick(rng)];
    if (u01(rng) < 0.5) key = -key;
    const double a = amp(rng);
    const double p = coherent ? 0.0 : ph(rng);
    terms.push_back({key, std::polar(a, p)});
  }
  return TrigPoly(two_gen(), std::move(terms));
}

// Three terms in each dyadic band [N/2, 2N], N = 1..top (27 terms for 256).
TrigPoly random_multiscale(std::mt19937_64& rng, Dyadic top) {
  TrigPoly f(two_gen());
  for (Dyadic N = 1; N <= top; N <<= 1) f = tp_add(f, random_trig(rng, 0.5 * N, 2.0 * N, 3, 3));
  return f;
}

GridField random_grid(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> ex(0.0, 2.0);
  AmplitudeLaw law{AmplitudeLaw::Kind::Power, ex(rng), 1.0};
  GridField g = gf_random_bandlimited(rng(), kGridL, n, lo, hi, law);
  const double w = g.wiener_norm();
  return w > 0 ? gf_scale(g, 1.0 / w) : g;
}

NormOptions verify_norm_opts() {
  NormOptions o;
  o.scan_length = 64.0;
  o.max_centers = 4096;
  return o;
}

SupOptions verify_sup_opts() {
  SupOptions o;
  o.window = 200.0;
  o.max_points = std::size_t{1} << 16;
  return o;
}

struct Sample {
  int sweep;
  double scale;
  double ratio;
};

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit loglog_fit(const std::map<double, double>& pts) {
  std::vector<double> x, y;
  for (auto [s, v] : pts)
    if (s > 0 && v > 0) { x.push_back(std::log(s)); y.push_back(std::log(v)); }
  Fit f;
  const std::size_t n = x.size();
  if (n < 2) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
  mx /= n; my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

// Accumulates the declared checks of one case.
class Checks {
 public:
  explicit Checks(InequalityCase& c) : c_(c) { c_.details["checks"] = json::array(); }

  // Uniform bound, judged on the large-scale half of the sweep: the log-log
  // slope of the per-scale max there is <= 0.15 and its max is within 10x of
  // the small-scale half's max.
  void bounded(const std::string& label, const std::vector<double>& scales,
               const std::vector<double>& ratios) {
    std::map<double, double> mx;
    for (std::size_t i = 0; i < scales.size(); ++i)
      mx[scales[i]] = std::max(mx[scales[i]], ratios[i]);
    record(ratios);
    const std::size_t n = mx.size();
    const std::size_t lower = n >= 4 ? n / 2 : 0;
    std::map<double, double> tail;
    double low_max = 0.0, high_max = 0.0;
    std::size_t k = 0;
    for (auto [s, v] : mx) {
      if (k++ < lower) {
        low_max = std::max(low_max, v);
      } else {
        tail[s] = v;
        high_max = std::max(high_max, v);
      }
    }
    if (lower == 0) low_max = high_max;
    const Fit f = loglog_fit(mx);
    const Fit ft = loglog_fit(tail);
    const bool finite = std::all_of(ratios.begin(), ratios.end(),
                                    [](double r) { return std::isfinite(r); });
    const bool ok = finite && n > 0 && ft.slope <= kSlopeSlack &&
                    high_max <= kBoundedMargin * low_max;
    fit(f);
    push(label, "bounded", ok, mx, f,
         {{"max", std::max(low_max, high_max)}, {"tail_slope", ft.slope},
          {"lower_half_max", low_max}, {"upper_half_max", high_max}});
  }

  void exponent(const std::string& label, const std::vector<double>& scales,
                const std::vector<double>& ratios, double expected, double tol) {
    std::map<double, double> mx;
    for (std::size_t i = 0; i < scales.size(); ++i)
      mx[scales[i]] = std::max(mx[scales[i]], ratios[i]);
    record(ratios);
    const Fit f = loglog_fit(mx);
    const bool ok = mx.size() >= 2 && std::abs(f.slope - expected) <= tol;
    fit(f);
    push(label, "exponent", ok, mx, f, {{"expected", expected}, {"tolerance", tol}});
  }

  void exact(const std::string& label, double err, double tol = kExactTol) {
    record({err});
    const bool ok = std::isfinite(err) && err < tol;
    json j{{"label", label}, {"kind", "exact"}, {"pass", ok}, {"max_error", err}, {"tolerance", tol}};
    c_.details["checks"].push_back(j);
    pass_ = pass_ && ok;
  }

  void flag(const std::string& label, bool ok, json info, const std::vector<double>& ratios = {}) {
    record(ratios);
    info["label"] = label;
    info["kind"] = "flag";
    info["pass"] = ok;
    c_.details["checks"].push_back(std::move(info));
    pass_ = pass_ && ok;
  }

  void finish() {
    c_.count = all_.size();
    c_.max_ratio = all_.empty() ? 0.0 : *std::max_element(all_.begin(), all_.end());
    c_.median_ratio = median_of(all_);
    c_.pass = pass_ && !c_.details["checks"].empty();
  }

 private:
  void record(const std::vector<double>& r) { all_.insert(all_.end(), r.begin(), r.end()); }
  void fit(const Fit& f) {
    if (c_.has_fit) return;
    c_.has_fit = true;
    c_.slope = f.slope;
    c_.r2 = f.r2;
  }
  void push(const std::string& label, const char* kind, bool ok, const std::map<double, double>& mx,
            const Fit& f, json extra) {
    json per = json::array();
    for (auto [s, v] : mx) per.push_back({s, v});
    json j{{"label", label}, {"kind", kind}, {"pass", ok}, {"per_scale_max", per},
           {"slope", f.slope}, {"r2", f.r2}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    c_.details["checks"].push_back(std::move(j));
    pass_ = pass_ && ok;
  }

  InequalityCase& c_;
  std::vector<double> all_;
  bool pass_ = true;
};

// Runs `body(trial, rng, out)` for each trial in parallel and returns the
// samples grouped by sweep id, merged in trial order.
using TrialBody = std::function<void(std::size_t, std::mt19937_64&, std::vector<Sample>&)>;

struct Sweeps {
  std::map<int, std::vector<double>> scales, ratios;
};

Sweeps run_trials(const std::string& name, std::size_t trials, std::uint64_t seed,
                  const TrialBody& body) {
  std::vector<std::vector<Sample>> per(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = trial_rng(seed, name, t);
    body(t, rng, per[t]);
  });
  Sweeps s;
  for (const auto& v : per)
    for (const auto& x : v) {
      s.scales[x.sweep].push_back(x.scale);
      s.ratios[x.sweep].push_back(x.ratio);
    }
  return s;
}

double safe_ratio(double a, double b) { return b > 0 ? a / b : 0.0; }

const DispersionSymbol& schr() {
  static const DispersionSymbol s = make_schrodinger();
  return s;
}
const DispersionSymbol& airy() {
  static const DispersionSymbol s = make_airy();
  return s;
}

double band_lo(Dyadic N) { return N == 1 ? 0.0 : 0.5 * static_cast<double>(N); }
double band_hi(Dyadic N) { return 1.1 * static_cast<double>(N); }

// ---------------------------------------------------------------- cases

void case_bernstein(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||P_N f||_inf <= C N^{1/2} ||P_N f||_{(l^inf L^2)_M}, uniformly in N, M";
  c.sampler = "trig: <=32 terms over {1, sqrt2} in the block band, random or coherent phases; "
              "grid: band-limited power-law fields on a torus of period 1024";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  const std::vector<Dyadic> Ns = dyadics_upto(256), Ms = {1, 4, 16, 64, 256};
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    for (Dyadic N : Ns) {
      const TrigPoly fN = project(N, random_trig(rng, band_lo(N), band_hi(N)));
      const double sup = sup_norm(fN, 0, so).value;
      for (Dyadic M : Ms) {
        const double r = safe_ratio(sup, std::sqrt(double(N)) * windowed_norm(fN, M, fam, no).value);
        out.push_back({0, double(N), r});
        out.push_back({1, double(M), r});
      }
    }
    if (t % 10 == 0)
      for (Dyadic N : dyadics_upto(16)) {
        const GridField fN = project(N, random_grid(rng, 8192, band_lo(N), band_hi(N)));
        const double sup = sup_norm(fN).value;
        for (Dyadic M : {Dyadic{1}, Dyadic{16}, Dyadic{128}})
          out.push_back({2, double(N),
                         safe_ratio(sup, std::sqrt(double(N)) * windowed_norm(fN, M, fam, no).value)});
      }
  });
  Checks ch(c);
  ch.bounded("trig, sweep in N (max over M)", sw.scales[0], sw.ratios[0]);
  ch.bounded("trig, sweep in M (max over N)", sw.scales[1], sw.ratios[1]);
  ch.bounded("grid, sweep in N", sw.scales[2], sw.ratios[2]);
  ch.finish();
}

void case_sobolev_bernstein(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||d^k P_N f||_{(l^inf L^2)_M} <= C N^k ||P_N f||_{(l^inf L^2)_M}, k = 1, 2";
  c.sampler = "trig: <=32 terms in the block band; grid: band-limited fields";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const std::vector<Dyadic> Ns = dyadics_upto(256), Ms = {1, 8, 64};
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    for (Dyadic N : Ns) {
      const TrigPoly fN = project(N, random_trig(rng, band_lo(N), band_hi(N)));
      const TrigPoly d1 = tp_derivative(fN), d2 = tp_derivative(d1);
      for (Dyadic M : Ms) {
        const double base = windowed_norm(fN, M, fam, no).value;
        out.push_back({0, double(N), safe_ratio(windowed_norm(d1, M, fam, no).value, N * base)});
        out.push_back({1, double(N),
                       safe_ratio(windowed_norm(d2, M, fam, no).value, double(N) * N * base)});
      }
    }
    if (t % 10 == 0)
      for (Dyadic N : dyadics_upto(16)) {
        const GridField fN = project(N, random_grid(rng, 8192, band_lo(N), band_hi(N)));
        const double base = windowed_norm(fN, 8, fam, no).value;
        out.push_back({2, double(N), safe_ratio(windowed_norm(gf_derivative(fN), 8, fam, no).value,
                                                N * base)});
      }
  });
  Checks ch(c);
  ch.bounded("trig k=1", sw.scales[0], sw.ratios[0]);
  ch.bounded("trig k=2", sw.scales[1], sw.ratios[1]);
  ch.bounded("grid k=1", sw.scales[2], sw.ratios[2]);
  ch.finish();
}

void case_commutator(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||[P_N, f] g||_{(l^inf L^2)_N} <= C N^{-1} ||f'||_inf ||g||_{(l^inf L^2)_N}";
  c.sampler = "f: 2-4 terms with |lambda| in [0.02, 0.25]; g: 4-12 terms in [0.4N, 1.2N]; N = 8..256";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  std::vector<Dyadic> Ns;
  for (Dyadic N = 8; N <= 256; N <<= 1) Ns.push_back(N);
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t, auto& rng, auto& out) {
    for (Dyadic N : Ns) {
      const TrigPoly f = random_trig(rng, 0.02, 0.25, 2, 4);
      const TrigPoly g = random_trig(rng, 0.4 * N, 1.2 * N, 4, 12);
      const double lhs = windowed_norm(commutator_pn(N, f, g), N, fam, no).value;
      const double rhs = sup_norm(tp_derivative(f), 0, so).value * windowed_norm(g, N, fam, no).value;
      const double r = safe_ratio(lhs, rhs);
      out.push_back({0, double(N), r});
      out.push_back({1, double(N), r * N});
    }
  });
  Checks ch(c);
  ch.exponent("slope in N of the raw ratio", sw.scales[0], sw.ratios[0], -1.0, kExpTol);
  ch.bounded("N-normalized ratio", sw.scales[1], sw.ratios[1]);
  ch.finish();
}

void case_projection_bounded(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||P_N f||_{(l^inf L^2)_M} + ||P_{<=N} f||_{(l^inf L^2)_M} <= C ||f||_{(l^inf L^2)_M}";
  c.sampler = "trig: 3 terms per dyadic band up to 256 (27 terms); grid: band [0, 40]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const std::vector<Dyadic> Ns = dyadics_upto(256), Ms = {1, 8, 64};
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    const TrigPoly f = random_multiscale(rng, 256);
    for (Dyadic M : Ms) {
      const double base = windowed_norm(f, M, fam, no).value;
      for (Dyadic N : Ns) {
        out.push_back({0, double(N), safe_ratio(windowed_norm(project(N, f), M, fam, no).value, base)});
        out.push_back({1, double(N), safe_ratio(windowed_norm(project_leq(N, f), M, fam, no).value, base)});
      }
    }
    if (t % 10 == 0) {
      const GridField g = random_grid(rng, 16384, 0.0, 40.0);
      const double base = windowed_norm(g, 8, fam, no).value;
      for (Dyadic N : dyadics_upto(32))
        out.push_back({2, double(N), safe_ratio(windowed_norm(project(N, g), 8, fam, no).value, base)});
    }
  });
  Checks ch(c);
  ch.bounded("trig P_N", sw.scales[0], sw.ratios[0]);
  ch.bounded("trig P_{<=N}", sw.scales[1], sw.ratios[1]);
  ch.bounded("grid P_N", sw.scales[2], sw.ratios[2]);
  ch.finish();
}

void case_equiv_variants(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "lattice, translation, fattened-projection and mollified-window norms are "
                "mutually equivalent";
  c.sampler = "trig: <=32 terms in [N/2, 2N], s in {0, 1}; grid: band [N/2, 2N]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const std::vector<std::string> keys = {"lattice", "fattened_projection", "mollified_cutoff"};
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    for (Dyadic N : dyadics_upto(64)) {
      const TrigPoly f = random_trig(rng, 0.5 * N, 2.0 * N, 4, 16);
      const double s = (t % 2) ? 1.0 : 0.0;
      auto v = equiv_norm_variants(f, s, schr(), fam, no);
      const double ref = v.at("translation");
      for (std::size_t k = 0; k < keys.size(); ++k) {
        const double r = safe_ratio(v.at(keys[k]), ref);
        out.push_back({int(2 * k), double(N), r});
        out.push_back({int(2 * k + 1), double(N), safe_ratio(1.0, r)});
      }
    }
    if (t % 10 == 0)
      for (Dyadic N : dyadics_upto(8)) {
        const GridField g = random_grid(rng, 8192, 0.5 * N, 2.0 * N);
        auto v = equiv_norm_variants(g, 0.0, schr(), fam, no);
        const double r = safe_ratio(v.at("mollified_cutoff"), v.at("translation"));
        out.push_back({6, double(N), r});
        out.push_back({7, double(N), safe_ratio(1.0, r)});
      }
  });
  Checks ch(c);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    ch.bounded(keys[k] + " / translation", sw.scales[2 * k], sw.ratios[2 * k]);
    ch.bounded("translation / " + keys[k], sw.scales[2 * k + 1], sw.ratios[2 * k + 1]);
  }
  ch.bounded("grid mollified / translation", sw.scales[6], sw.ratios[6]);
  ch.bounded("grid translation / mollified", sw.scales[7], sw.ratios[7]);
  ch.finish();
}

void case_monotone_window(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||f||_{(l^inf L^2)_N} <= C ||f||_{(l^inf L^2)_M} for N <= M, and "
                "<= C (N/M)^sigma ||f||_{(l^inf L^2)_M} for M < N";
  c.sampler = "trig: <=32 terms with |lambda| <= 64; windows 1..64, Schrodinger and Airy scalings";
  const auto no = verify_norm_opts();
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    const DispersionSymbol& sym = (t % 2) ? airy() : schr();
    const CutoffFamily fam = CutoffFamily::for_symbol(sym);
    const Dyadic top = sym.sigma > 1.5 ? 16 : 64;
    const TrigPoly f = random_trig(rng, 0.0, 64.0);
    std::map<Dyadic, double> w;
    for (Dyadic N : dyadics_upto(top)) w[N] = windowed_norm(f, N, fam, no).value;
    for (auto [N, wn] : w)
      for (auto [M, wm] : w) {
        if (M >= N) {
          out.push_back({0, double(M / N), safe_ratio(wn, wm)});
        } else {
          const double q = double(N) / double(M);
          out.push_back({1, q, safe_ratio(wn, std::pow(q, fam.sigma) * wm)});
          out.push_back({2, q, safe_ratio(wn, std::pow(q, fam.sigma / 2) * wm)});
        }
      }
  });
  Checks ch(c);
  ch.bounded("N <= M, sweep in M/N", sw.scales[0], sw.ratios[0]);
  ch.bounded("M < N with (N/M)^sigma", sw.scales[1], sw.ratios[1]);
  ch.bounded("M < N with (N/M)^{sigma/2}", sw.scales[2], sw.ratios[2]);
  ch.finish();
}

void case_sobolev_embed(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||f||_{C^0} <= C ||f||_{l^inf H^s}, s = 0.51";
  c.sampler = "trig: <=32 terms with |lambda| <= N; grid: band [0, N]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    for (Dyadic N : dyadics_upto(128)) {
      const TrigPoly f = random_trig(rng, 0.0, double(N));
      out.push_back({0, double(N), safe_ratio(sup_norm(f, 0, so).value,
                                              uls_norm(f, 0.51, schr(), fam, no).value)});
    }
    if (t % 10 == 0)
      for (Dyadic N : dyadics_upto(16)) {
        const GridField g = random_grid(rng, 8192, 0.0, double(N));
        out.push_back({1, double(N), safe_ratio(sup_norm(g).value,
                                                uls_norm(g, 0.51, schr(), fam, no).value)});
      }
  });
  Checks ch(c);
  ch.bounded("trig", sw.scales[0], sw.ratios[0]);
  ch.bounded("grid", sw.scales[1], sw.ratios[1]);
  ch.finish();
}

void case_sobolev_embed_reverse(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||f||_{l^inf H^s} <= C ||f||_{C^l}, l = ceil(s + sigma/2) + 1, s = 1";
  c.sampler = "trig: <=32 terms with |lambda| <= N, Schrodinger (l = 3) and Airy (l = 3)";
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    const DispersionSymbol& sym = (t % 2) ? airy() : schr();
    const CutoffFamily fam = CutoffFamily::for_symbol(sym);
    const double s = 1.0;
    const int l = static_cast<int>(std::ceil(s + sym.sigma / 2)) + 1;
    for (Dyadic N : dyadics_upto(64)) {
      const TrigPoly f = random_trig(rng, 0.0, double(N));
      out.push_back({int(t % 2), double(N),
                     safe_ratio(uls_norm(f, s, sym, fam, no).value, ck_norm(f, l, so))});
    }
  });
  Checks ch(c);
  ch.bounded("Schrodinger", sw.scales[0], sw.ratios[0]);
  ch.bounded("Airy", sw.scales[1], sw.ratios[1]);
  ch.finish();
}

template <class F>
F sum_piece(const std::map<Dyadic, Paraproduct<F>>& d, F Paraproduct<F>::*piece, const F& zero) {
  F acc = zero;
  for (const auto& [N, p] : d) acc = add(acc, p.*piece);
  return acc;
}

void case_coifman_meyer_lh(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||T_f g||_{l^inf H^0} <= C ||f||_inf ||g||_{l^inf H^0} and "
                "<= C ||f||_{l^inf H^0} ||g||_{l^inf H^{1/2}}";
  c.sampler = "trig: f <=12 terms with |lambda| <= N, g <=12 terms in [N/2, 2N]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t, auto& rng, auto& out) {
    for (Dyadic N : dyadics_upto(64)) {
      const TrigPoly f = random_trig(rng, 0.0, double(N), 2, 12);
      const TrigPoly g = random_trig(rng, 0.5 * N, 2.0 * N, 2, 12);
      const Dyadic top = dyadic_cover(tp_mul(f, g).max_abs_frequency());
      const auto d = paraproduct_decompose(f, g, top);
      const TrigPoly T = sum_piece(d, &Paraproduct<TrigPoly>::low_high, TrigPoly(two_gen()));
      const double lhs = uls_norm(T, 0.0, schr(), fam, no).value;
      out.push_back({0, double(N), safe_ratio(lhs, sup_norm(f, 0, so).value *
                                                       uls_norm(g, 0.0, schr(), fam, no).value)});
      out.push_back({1, double(N), safe_ratio(lhs, uls_norm(f, 0.0, schr(), fam, no).value *
                                                       uls_norm(g, 0.5, schr(), fam, no).value)});
    }
  });
  Checks ch(c);
  ch.bounded("L^inf x H^0", sw.scales[0], sw.ratios[0]);
  ch.bounded("H^0 x H^{1/2}", sw.scales[1], sw.ratios[1]);
  ch.finish();
}

void case_coifman_meyer_hh(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||Pi(f, g)||_{l^inf H^0} <= C ||f||_{l^inf H^0} ||g||_{l^inf H^{1/2+}}, "
                "1/2+ = 0.51";
  c.sampler = "trig: f, g <=12 terms in the same band [N/2, 2N]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t, auto& rng, auto& out) {
    for (Dyadic N : dyadics_upto(64)) {
      const TrigPoly f = random_trig(rng, 0.5 * N, 2.0 * N, 2, 12);
      const TrigPoly g = random_trig(rng, 0.5 * N, 2.0 * N, 2, 12);
      const Dyadic top = dyadic_cover(tp_mul(f, g).max_abs_frequency());
      const auto d = paraproduct_decompose(f, g, top);
      const TrigPoly P = sum_piece(d, &Paraproduct<TrigPoly>::high_high, TrigPoly(two_gen()));
      out.push_back({0, double(N), safe_ratio(uls_norm(P, 0.0, schr(), fam, no).value,
                                              uls_norm(f, 0.0, schr(), fam, no).value *
                                                  uls_norm(g, 0.51, schr(), fam, no).value)});
    }
  });
  Checks ch(c);
  ch.bounded("H^0 x H^{0.51}", sw.scales[0], sw.ratios[0]);
  ch.finish();
}

void case_product_rule(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||fg||_{l^inf H^1} <= C (||f||_{l^inf H^1} ||g||_inf + ||f||_inf ||g||_{l^inf H^1})"
                " <= C' ||f||_{l^inf H^1} ||g||_{l^inf H^1}";
  c.sampler = "trig: f, g <=12 terms with |lambda| <= N; grid: bands [N/2, N]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    for (Dyadic N : dyadics_upto(64)) {
      const TrigPoly f = random_trig(rng, 0.0, double(N), 2, 12);
      const TrigPoly g = random_trig(rng, 0.0, double(N), 2, 12);
      const double fg = uls_norm(tp_mul(f, g), 1.0, schr(), fam, no).value;
      const double hf = uls_norm(f, 1.0, schr(), fam, no).value;
      const double hg = uls_norm(g, 1.0, schr(), fam, no).value;
      const double rhs = hf * sup_norm(g, 0, so).value + sup_norm(f, 0, so).value * hg;
      out.push_back({0, double(N), safe_ratio(fg, rhs)});
      out.push_back({1, double(N), safe_ratio(fg, hf * hg)});
    }
    if (t % 5 == 0)
      for (Dyadic N : dyadics_upto(16)) {
        const GridField f = random_grid(rng, 16384, 0.5 * N, double(N));
        const GridField g = random_grid(rng, 16384, 0.5 * N, double(N));
        const double fg = uls_norm(gf_mul(f, g), 1.0, schr(), fam, no).value;
        const double hf = uls_norm(f, 1.0, schr(), fam, no).value;
        const double hg = uls_norm(g, 1.0, schr(), fam, no).value;
        out.push_back({2, double(N),
                       safe_ratio(fg, hf * sup_norm(g).value + sup_norm(f).value * hg)});
      }
  });
  Checks ch(c);
  ch.bounded("trig product rule", sw.scales[0], sw.ratios[0]);
  ch.bounded("trig algebra", sw.scales[1], sw.ratios[1]);
  ch.bounded("grid product rule", sw.scales[2], sw.ratios[2]);
  ch.finish();
}

void case_chain_rule(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||P(u)||_{l^inf H^1} <= C ||u||_inf^{p-1} ||u||_{l^inf H^1}; "
                "||P(u) - P(v)||_{l^inf H^0} <= C (||u||^{p-1}_{l^inf H^{0.51}} + "
                "||v||^{p-1}_{l^inf H^{0.51}}) ||u - v||_{l^inf H^0}";
  c.sampler = "trig: u <=6 terms with |lambda| <= N, v = u + 0.1 w; P = |u|^2 u and u^3";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  const auto so = verify_sup_opts();
  NonlinearitySpec cubic, power3;
  cubic.Nl = {{cplx(1.0), 2, 1}};
  power3.Nl = {{cplx(1.0), 3, 0}};
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    const NonlinearitySpec& P = (t % 2) ? power3 : cubic;
    for (Dyadic N : dyadics_upto(64)) {
      const TrigPoly u = random_trig(rng, 0.0, double(N), 2, 6);
      const TrigPoly w = random_trig(rng, 0.0, double(N), 2, 6);
      const TrigPoly v = tp_add(u, tp_scale(w, 0.1));
      const TrigPoly Pu = tp_nonlinearity(u, P), Pv = tp_nonlinearity(v, P);
      const double su = sup_norm(u, 0, so).value;
      out.push_back({0, double(N), safe_ratio(uls_norm(Pu, 1.0, schr(), fam, no).value,
                                              su * su * uls_norm(u, 1.0, schr(), fam, no).value)});
      const double a = uls_norm(u, 0.51, schr(), fam, no).value;
      const double b = uls_norm(v, 0.51, schr(), fam, no).value;
      out.push_back({1, double(N), safe_ratio(uls_norm(tp_sub(Pu, Pv), 0.0, schr(), fam, no).value,
                                              (a * a + b * b) *
                                                  uls_norm(tp_sub(u, v), 0.0, schr(), fam, no).value)});
    }
  });
  Checks ch(c);
  ch.bounded("chain rule H^1", sw.scales[0], sw.ratios[0]);
  ch.bounded("Lipschitz form H^0", sw.scales[1], sw.ratios[1]);
  ch.finish();
}

void case_kernel_scaling(InequalityCase& c, std::size_t, std::uint64_t) {
  c.statement = "||F^{-1} d_xi (A psi_N)||_{L^1} <= C N^sigma";
  c.sampler = "deterministic quadrature, N = 4..256, Schrodinger and Airy";
  std::vector<double> Ns;
  for (Dyadic N = 4; N <= 256; N <<= 1) Ns.push_back(double(N));
  std::vector<double> ks(Ns.size()), ka(Ns.size());
  parallel_for(Ns.size(), [&](std::size_t i) {
    ks[i] = kernel_l1_estimate(schr(), Dyadic(Ns[i])).value;
    ka[i] = kernel_l1_estimate(airy(), Dyadic(Ns[i])).value;
  });
  Checks ch(c);
  ch.exponent("Schrodinger", Ns, ks, schr().sigma, 0.1);
  ch.exponent("Airy", Ns, ka, airy().sigma, 0.1);
  ch.finish();
}

void case_linear_energy(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||e^{-tA} u0||_{l^inf H^s}^2 <= ||u0||_{l^inf H^s}^2 e^{Ct}";
  c.sampler = "trig: <=32 terms with |lambda| <= 32, s in {0, 1}, t in [0, 1]; both symbols";
  const auto no = verify_norm_opts();
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(0.1 * k);
  auto sw = run_trials(c.name, trials, seed, [&](std::size_t t, auto& rng, auto& out) {
    const DispersionSymbol& sym = (t % 2) ? airy() : schr();
    const CutoffFamily fam = CutoffFamily::for_symbol(sym);
    const TrigPoly u0 = random_trig(rng, 0.0, sym.sigma > 1.5 ? 12.0 : 32.0);
    const double s = (t / 2) % 2 ? 1.0 : 0.0;
    const auto r = linear_energy_sweep(u0, sym, s, times, fam, no);
    for (std::size_t k = 0; k < r.size(); ++k) {
      out.push_back({0, times[k], r[k]});
      out.push_back({1, times[k], safe_ratio(1.0, r[k])});
    }
  });
  const auto& up = sw.ratios[0];
  const auto& dn = sw.ratios[1];
  const double mu = up.empty() ? 0.0 : *std::max_element(up.begin(), up.end());
  const double md = dn.empty() ? 0.0 : *std::max_element(dn.begin(), dn.end());
  Checks ch(c);
  ch.flag("growth ratio <= 3 on [0, 1]", mu <= 3.0, {{"max", mu}}, up);
  ch.flag("backward ratio <= 3 on [0, 1]", md <= 3.0, {{"max", md}});
  ch.finish();
}

EquationSpec cubic_eq(const DispersionSymbol& sym) {
  EquationSpec eq;
  eq.sym = sym;
  eq.nl.Nl = {{cplx(0.0, -1.0), 2, 1}};
  eq.s = 1.0;
  return eq;
}

void case_nonlinear_energy(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||u(t)||_{l^inf H^s}^2 <= ||u0||^2 exp(int_0^t C(||u||_inf, ||u_x||_inf)), "
                "C a polynomial with non-negative coefficients";
  c.sampler = "trig: <=6 terms with |lambda| <= 4, Wiener size 0.3; cubic (T = 0.1) and "
              "derivative Q(r) = r with M = 64 (T = 0.02); both symbols";
  std::vector<std::vector<EnergyRecord>> recs(trials);
  std::vector<json> info(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = trial_rng(seed, c.name, t);
    const DispersionSymbol& sym = (t % 2) ? airy() : schr();
    const bool deriv = (t / 2) % 2 == 1;
    EquationSpec eq = cubic_eq(sym);
    if (deriv) {
      eq.nl.Nl.clear();
      eq.nl.Q = {0.0, 1.0};
    }
    TrigPoly u0 = random_trig(rng, 0.0, 4.0, 2, 6);
    u0 = tp_scale(u0, 0.3 / u0.wiener_norm());
    SolveConfig cfg;
    cfg.T = deriv ? 0.02 : 0.1;
    cfg.n_time_nodes = 11;
    cfg.prune_floor = 1e-14;
    const auto traj = deriv ? solve_with_time_search(u0, eq, cfg, Dyadic{64})
                            : solve_with_time_search(u0, eq, cfg);
    const auto fam = CutoffFamily::for_symbol(sym);
    recs[t] = energy_diagnostics(traj, eq, frozen_energy_constants(eq), fam, verify_norm_opts(), false,
                                 verify_sup_opts());
    info[t] = {{"family", equation_family(eq)}, {"converged", traj.converged},
               {"T_achieved", traj.T_achieved}};
  });
  std::vector<double> ratios;
  bool ok = true;
  for (std::size_t t = 0; t < trials; ++t)
    for (const auto& r : recs[t]) {
      ok = ok && r.ok;
      ratios.push_back(safe_ratio(r.norm_sq, r.bound));
    }
  bool conv = true;
  for (const auto& j : info) conv = conv && j.at("converged").get<bool>();
  Checks ch(c);
  ch.flag("frozen constants bound every node", ok, {{"runs", info}}, ratios);
  ch.flag("every run converged", conv, json::object());
  ch.finish();
}

void case_lipschitz_h0(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||u(t) - v(t)||_{l^inf H^0} <= ||u0 - v0||_{l^inf H^0} exp(int_0^t C)";
  c.sampler = "trig: pairs u0, u0 + 1e-3 w, amplitude 0.3, cubic, T = 0.1, both symbols";
  std::vector<std::vector<EnergyRecord>> recs(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = trial_rng(seed, c.name, t);
    const DispersionSymbol& sym = (t % 2) ? airy() : schr();
    const EquationSpec eq = cubic_eq(sym);
    TrigPoly u0 = random_trig(rng, 0.0, 4.0, 2, 6);
    u0 = tp_scale(u0, 0.3 / u0.wiener_norm());
    TrigPoly w = random_trig(rng, 0.0, 4.0, 2, 6);
    const TrigPoly v0 = tp_add(u0, tp_scale(w, 1e-3 / w.wiener_norm()));
    SolveConfig cfg;
    cfg.T = 0.1;
    cfg.n_time_nodes = 11;
    cfg.prune_floor = 1e-14;
    const auto tu = solve_with_time_search(u0, eq, cfg);
    cfg.T = tu.T_achieved;
    cfg.max_halvings = 0;
    const auto tv = solve_with_time_search(v0, eq, cfg);
    const auto fam = CutoffFamily::for_symbol(sym);
    recs[t] = lipschitz_diagnostics(tu, tv, eq, frozen_lipschitz_constants(eq), fam,
                                    verify_norm_opts(), false, verify_sup_opts());
  });
  std::vector<double> ratios;
  bool ok = true;
  for (const auto& rv : recs)
    for (const auto& r : rv) {
      ok = ok && r.ok;
      ratios.push_back(safe_ratio(r.norm, r.bound));
    }
  Checks ch(c);
  ch.flag("frozen constants bound every node", ok, json::object(), ratios);
  ch.finish();
}

// P_N(q * d_x u) split as
//   q_lo d_x P_N u + [P_N, q_lo] d_x P~_N u + P_N(q_hi d_x u_lo) + sum_{rest} P_N(q_A d_x u_B)
// with every piece computed independently of the paraproduct routine.
template <class F>
double paradiff_error(const F& u, const F& q, Dyadic top, double& lib_err) {
  const F g = differentiate(u);
  double err = 0.0;
  lib_err = 0.0;
  const auto dec = paraproduct_decompose(q, g, top);
  const auto Ds = dyadics_upto(top);
  std::map<Dyadic, F> qA, gB;
  for (Dyadic A : Ds) { qA.emplace(A, project(A, q)); gB.emplace(A, project(A, g)); }
  for (Dyadic N : Ds) {
    const Dyadic lo = paraproduct_low_cut(N);
    const F ref = project(N, multiply(q, g));
    const F q_lo = project_leq(lo, q);
    const F p1 = multiply(q_lo, differentiate(project(N, u)));
    const F p2 = commutator_pn(N, q_lo, differentiate(project_fat(N, u)));
    const auto fat = fat_set(N);
    auto in_fat = [&](Dyadic A) { return std::find(fat.begin(), fat.end(), A) != fat.end(); };
    F q_hi = zero_like(q);
    for (Dyadic A : fat)
      if (A > lo && qA.count(A)) q_hi = add(q_hi, qA.at(A));
    const F p3 = project(N, multiply(q_hi, project_leq(lo, g)));
    F p4 = zero_like(q);
    for (Dyadic A : Ds)
      for (Dyadic B : Ds) {
        const bool lh = A <= lo && in_fat(B);
        const bool hl = B <= lo && A > lo && in_fat(A);
        if (lh || hl) continue;
        p4 = add(p4, project(N, multiply(qA.at(A), gB.at(B))));
      }
    const F sum = add(add(p1, p2), add(p3, p4));
    const double scale = std::max(1.0, wiener(ref));
    err = std::max(err, wiener(subtract(sum, ref)) / scale);
    const auto& d = dec.at(N);
    lib_err = std::max(lib_err, wiener(subtract(d.low_high, add(p1, p2))) / scale);
    lib_err = std::max(lib_err, wiener(subtract(d.high_low, p3)) / scale);
    lib_err = std::max(lib_err, wiener(subtract(d.high_high, p4)) / scale);
  }
  return err;
}

void case_paradiff_reconstruction(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "P_N(Q(u) u_x) = Q_lo P_N u_x + [P_N, Q_lo] P~_N u_x + P_N(Q_hi u_lo,x) + "
                "high-high remainder, exactly";
  c.sampler = "trig: u <=8 terms with |lambda| <= 16, Q(r) = 1 + r on r = |u|^2; "
              "grid: band [0, 8] on 16384 points";
  std::vector<double> e1(trials), e2(trials);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = trial_rng(seed, c.name, t);
    if (t % 4 == 3) {
      const GridField u = random_grid(rng, 16384, 0.0, 8.0);
      const GridField q = gf_add(GridField::from_samples(u.L(), std::vector<cplx>(u.size(), 1.0)),
                                 gf_mul(u, gf_conj(u)));
      const Dyadic top = dyadic_cover(2.0 * q.max_abs_frequency(1e-14) + u.max_abs_frequency(1e-14));
      e1[t] = paradiff_error(u, q, top, e2[t]);
    } else {
      const TrigPoly u = random_trig(rng, 0.0, 16.0, 2, 8);
      const TrigPoly q = tp_add(TrigPoly::constant(two_gen(), 1.0), tp_mul(u, tp_conj(u)));
      const Dyadic top = dyadic_cover(tp_mul(q, u).max_abs_frequency());
      e1[t] = paradiff_error(u, q, top, e2[t]);
    }
  });
  Checks ch(c);
  ch.exact("four-way split reassembles P_N(Q u_x)", *std::max_element(e1.begin(), e1.end()));
  ch.exact("split agrees with the paraproduct routine", *std::max_element(e2.begin(), e2.end()));
  ch.finish();
}

void case_smooth_approx(InequalityCase& c, std::size_t trials, std::uint64_t seed) {
  c.statement = "||P_{<=N} f - f||_{l^inf H^s} decreases to 0 as N grows";
  c.sampler = "trig: <=32 terms with |lambda| <= 64, s in {0, 1}; grid: band [0, 16]";
  const CutoffFamily fam = CutoffFamily::for_symbol(schr());
  const auto no = verify_norm_opts();
  std::vector<json> bad(trials);
  std::vector<char> mono(trials, 1), zero(trials, 1);
  std::vector<double> ratios(trials, 0.0);
  parallel_for(trials, [&](std::size_t t) {
    auto rng = trial_rng(seed, c.name, t);
    const double s = (t % 2) ? 1.0 : 0.0;
    std::vector<double> d;
    if (t % 10 == 9) {
      const GridField f = random_grid(rng, 8192, 0.0, 16.0);
      const Dyadic top = dyadic_cover(f.max_abs_frequency(0.0));
      for (Dyadic N : dyadics_upto(2 * top))
        d.push_back(uls_norm(gf_sub(project_leq(N, f), f), s, schr(), fam, no).value);
    } else {
      const TrigPoly f = random_trig(rng, 0.0, 64.0);
      const Dyadic top = dyadic_cover(f.max_abs_frequency());
      for (Dyadic N : dyadics_upto(2 * top))
        d.push_back(uls_norm(tp_sub(project_leq(N, f), f), s, schr(), fam, no).value);
    }
    for (std::size_t k = 1; k < d.size(); ++k) {
      const double slack = 1e-9 * d.front();
      if (d[k] > d[k - 1] + slack) mono[t] = 0;
      ratios[t] = std::max(ratios[t], safe_ratio(d[k], d[k - 1]));
    }
    if (d.back() != 0.0) zero[t] = 0;
    bad[t] = d;
  });
  bool m = true, z = true;
  json fails = json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    if (!mono[t] || !zero[t]) fails.push_back({{"trial", t}, {"tail", bad[t]}});
    m = m && mono[t];
    z = z && zero[t];
  }
  Checks ch(c);
  ch.flag("non-increasing in N", m, {{"failures", fails}}, ratios);
  ch.flag("exactly zero once N covers the support", z, json::object());
  ch.finish();
}

using CaseFn = void (*)(InequalityCase&, std::size_t, std::uint64_t);

struct Entry {
  const char* name;
  CaseFn fn;
  int trials;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {"bernstein", case_bernstein, 100},
      {"sobolev_bernstein", case_sobolev_bernstein, 50},
      {"commutator", case_commutator, 100},
      {"projection_bounded", case_projection_bounded, 50},
      {"equiv_variants", case_equiv_variants, 20},
      {"monotone_window", case_monotone_window, 40},
      {"sobolev_embed", case_sobolev_embed, 50},
      {"sobolev_embed_reverse", case_sobolev_embed_reverse, 40},
      {"coifman_meyer_lh", case_coifman_meyer_lh, 30},
      {"coifman_meyer_hh", case_coifman_meyer_hh, 30},
      {"product_rule", case_product_rule, 40},
      {"chain_rule", case_chain_rule, 120},
      {"kernel_scaling", case_kernel_scaling, 1},
      {"linear_energy", case_linear_energy, 20},
      {"nonlinear_energy", case_nonlinear_energy, 4},
      {"lipschitz_h0", case_lipschitz_h0, 4},
      {"paradiff_reconstruction", case_paradiff_reconstruction, 20},
      {"smooth_approx", case_smooth_approx, 20},
  };
  return e;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (name == e.name) return e;
  throw Error(ErrorCode::UnknownCase, "unknown verify case '" + name + "'");
}

}  // namespace

json InequalityCase::to_json() const {
  json j{{"name", name},     {"statement", statement},  {"sampler", sampler},
         {"criterion", criterion}, {"max", max_ratio}, {"median", median_ratio},
         {"count", count},   {"pass", pass},           {"details", details}};
  if (has_fit) { j["slope"] = slope; j["r2"] = r2; }
  return j;
}

json VerifySummary::to_json() const {
  json arr = json::array();
  for (const auto& c : cases) arr.push_back(c.to_json());
  return {{"all_pass", all_pass}, {"cases", arr}};
}

const std::vector<std::string>& verify_registry() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : entries()) v.push_back(e.name);
    return v;
  }();
  return names;
}

int default_trials(const std::string& name) { return find_entry(name).trials; }

InequalityCase run_case(const std::string& name, int trials, std::uint64_t seed) {
  const Entry& e = find_entry(name);
  InequalityCase c;
  c.name = name;
  c.criterion = "bounded checks: over the large-scale half of the sweep, per-scale max slope <= 0.15 "
                "and max <= 10x the small-scale half max; exponent checks: slope within tolerance; exact checks: error < 1e-10";
  const std::size_t n = static_cast<std::size_t>(trials > 0 ? trials : e.trials);
  c.details = json::object();
  c.details["trials"] = n;
  c.details["seed"] = seed;
  e.fn(c, n, seed);
  return c;
}

VerifySummary run_all(std::uint64_t seed) {
  VerifySummary s;
  s.all_pass = true;
  for (const auto& name : verify_registry()) {
    s.cases.push_back(run_case(name, 0, seed));
    s.all_pass = s.all_pass && s.cases.back().pass;
  }
  return s;
}

}  // namespace uls
