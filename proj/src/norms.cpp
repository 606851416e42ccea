#include "uls/norms.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "uls/errors.hpp"
#include "uls/fft.hpp"
#include "uls/parallel.hpp"

namespace uls {
namespace {

constexpr double kPi = std::numbers::pi;

// chi^2 has Fourier transform below 1e-15 past |w| ~ 1000 at unit scale.
constexpr double kSharpCutoff = 1500.0;
constexpr int kSharpTableDensity = 1024;  // samples per unit length

struct SharpTable {
  std::vector<double> f;  // chi(x_j)^2 * trapezoid weight, x_j = j/1024 on [0, 3/4]
  double dx = 1.0 / kSharpTableDensity;
};

const SharpTable& sharp_table(bool normalized) {
  static const std::array<SharpTable, 2> tables = [] {
    std::array<SharpTable, 2> t;
    for (int norm = 0; norm < 2; ++norm) {
      CutoffFamily fam{1.0, norm == 1};
      const int n = static_cast<int>(kChiOuter * kSharpTableDensity);
      t[norm].f.resize(n + 1);
      for (int j = 0; j <= n; ++j) {
        const double c = fam.profile(j * t[norm].dx);
        t[norm].f[j] = c * c * t[norm].dx * (j == 0 ? 0.5 : 1.0);
      }
    }
    return t;
  }();
  return tables[normalized ? 1 : 0];
}

// 2 sum_j f_j cos(w x_j) by the Chebyshev recurrence.
double cosine_sum(const std::vector<double>& f, double dx, double w) {
  const double c1 = std::cos(w * dx);
  double prev = std::cos(-w * dx), cur = 1.0, acc = 0.0;
  for (double fj : f) {
    acc += fj * cur;
    const double next = 2.0 * c1 * cur - prev;
    prev = cur;
    cur = next;
  }
  return 2.0 * acc;
}

// Frequency-localised window P_{<=1} chi_S, tabulated once per scale.
struct MollifiedTable {
  std::vector<double> x, g2w;  // abscissae and g^2 * dx (negligible tails dropped)
  double scale = 0.0;
};

constexpr double kMollifiedPad = 512.0;
constexpr double kMollifiedDx = 0.5;

std::shared_ptr<const MollifiedTable> mollified_table(const CutoffFamily& fam, double S) {
  static std::mutex mu;
  static std::map<std::pair<double, bool>, std::shared_ptr<const MollifiedTable>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({S, fam.partition_normalized});
    if (it != cache.end()) return it->second;
  }
  const std::size_t n = fft::next_pow2(
      static_cast<std::size_t>(std::ceil((1.5 * S + 2 * kMollifiedPad) / kMollifiedDx)));
  const double dx = kMollifiedDx;
  std::vector<cplx> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(fft::signed_index(j, n)) * dx;
    v[j] = fam.profile(x / S);
  }
  auto c = fft::forward(v);
  const double box = dx * static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k)
    c[k] *= phi(2.0 * kPi * static_cast<double>(fft::signed_index(k, n)) / box) / static_cast<double>(n);
  auto g = fft::backward(c);
  auto t = std::make_shared<MollifiedTable>();
  t->scale = S;
  double top = 0.0;
  for (auto z : g) top = std::max(top, std::norm(z));
  for (std::size_t j = 0; j < n; ++j) {
    const double g2 = std::norm(g[j]);
    if (g2 <= 1e-32 * top) continue;
    t->x.push_back(static_cast<double>(fft::signed_index(j, n)) * dx);
    t->g2w.push_back(g2 * dx);
  }
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(S, fam.partition_normalized), t);
  return t;
}

// Fourier transform of the squared window at scale S, memoised per call.
class WindowTransform {
 public:
  WindowTransform(const CutoffFamily& fam, double S, WindowKind kind)
      : fam_(fam), S_(S), kind_(kind) {
    if (kind_ == WindowKind::Mollified) table_ = mollified_table(fam, S);
  }

  double operator()(double w) {
    w = std::abs(w);
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    const double v = compute(w);
    memo_.emplace(w, v);
    return v;
  }

  // Upper frequency beyond which the transform vanishes (or is negligible).
  double support() const {
    return kind_ == WindowKind::Sharp ? kSharpCutoff / S_ : 2.0 * kPhiOuter;
  }

 private:
  double compute(double w) const {
    if (w > support()) return 0.0;
    if (kind_ == WindowKind::Sharp) return S_ * fam_.sq_transform(S_ * w);
    double acc = 0.0;
    for (std::size_t j = 0; j < table_->x.size(); ++j) acc += table_->g2w[j] * std::cos(w * table_->x[j]);
    return acc;
  }

  CutoffFamily fam_;
  double S_;
  WindowKind kind_;
  std::shared_ptr<const MollifiedTable> table_;
  std::unordered_map<double, double> memo_;
};

// G(y) = ||chi_y v||^2 = c0 + 2 Re sum_d c_d e^{i w_d y} over w_d > 0.
struct WindowSeries {
  double c0 = 0.0;
  std::vector<double> w;
  std::vector<cplx> c;
  double lip = 0.0;    // sum 2|w||c|, bounds |G'|
  double curv = 0.0;   // sum 2 w^2 |c|, bounds |G''|
  double max_w = 0.0;

  double eval(double y) const {
    double acc = c0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += 2.0 * (c[i] * std::polar(1.0, w[i] * y)).real();
    return acc;
  }

  void finish() {
    for (std::size_t i = 0; i < w.size(); ++i) {
      lip += 2.0 * w[i] * std::abs(c[i]);
      curv += 2.0 * w[i] * w[i] * std::abs(c[i]);
      max_w = std::max(max_w, w[i]);
    }
  }
};

WindowSeries series_of(const TrigPoly& v, WindowTransform& W) {
  std::unordered_map<FreqVec, cplx, FreqVecHash> corr;
  auto t = v.terms();
  corr.reserve(t.size() * t.size());
  for (const auto& a : t)
    for (const auto& b : t) corr[a.key - b.key] += a.coef * std::conj(b.coef);
  WindowSeries s;
  const double wmax = W.support();
  for (auto& [key, c] : corr) {
    const double d = v.module().value(key);
    if (key.is_zero()) {
      s.c0 += W(0.0) * c.real();
    } else if (d > 0 && d <= wmax) {
      const double wv = W(d);
      if (wv == 0.0) continue;
      s.w.push_back(d);
      s.c.push_back(wv * c);
    }
  }
  // Deterministic order for summation.
  std::vector<std::size_t> idx(s.w.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return s.w[a] < s.w[b]; });
  WindowSeries out;
  out.c0 = s.c0;
  for (auto i : idx) { out.w.push_back(s.w[i]); out.c.push_back(s.c[i]); }
  out.finish();
  return out;
}

// Grid: |v|^2 coefficients d_k on k/L, then c_k = W(k/L) d_k.
WindowSeries series_of(const GridField& v, WindowTransform& W) {
  const std::size_t n = v.size();
  auto fine = gf_upsample(v, 2);
  for (auto& z : fine) z = std::norm(z);
  auto d = fft::forward(fine);
  const double inv = 1.0 / static_cast<double>(2 * n);
  WindowSeries s;
  s.c0 = W(0.0) * d[0].real() * inv;
  const double wmax = W.support();
  for (std::size_t k = 1; k < n; ++k) {
    const double w = static_cast<double>(k) / v.L();
    if (w > wmax) break;
    const cplx dk = d[k] * inv;
    if (dk == cplx(0.0)) continue;
    const double wv = W(w);
    if (wv == 0.0) continue;
    s.w.push_back(w);
    s.c.push_back(wv * dk);
  }
  s.finish();
  return s;
}

// Upper bound on sup over an interval of length h between samples of
// sqrt(G), given the sampled maximum g_max of G. Combines the first- and
// second-order Taylor bounds with the pointwise Lipschitz estimate.
double sampling_gap(const WindowSeries& s, double g_max, double h, double pointwise_lip) {
  const double v = std::sqrt(std::max(g_max, 0.0));
  double up = std::min(g_max + s.lip * h / 2.0, g_max + s.curv * h * h / 8.0);
  double gap = std::sqrt(std::max(up, 0.0)) - v;
  if (std::isfinite(pointwise_lip)) gap = std::min(gap, pointwise_lip * h / 2.0);
  return std::max(gap, 0.0);
}

// Scan G on y_m = y0 + m h, m < count, by phasor recurrence.
std::pair<double, double> scan_series(const WindowSeries& s, double y0, double h, std::size_t count) {
  const std::size_t K = s.w.size();
  std::vector<cplx> z(K), r(K);
  double best = -1.0, best_y = y0;
  for (std::size_t m = 0; m < count; ++m) {
    const double y = y0 + static_cast<double>(m) * h;
    if (m % 256 == 0) {
      for (std::size_t i = 0; i < K; ++i) {
        z[i] = s.c[i] * std::polar(1.0, s.w[i] * y);
        r[i] = std::polar(1.0, s.w[i] * h);
      }
    }
    double g = s.c0;
    for (std::size_t i = 0; i < K; ++i) {
      g += 2.0 * z[i].real();
      z[i] *= r[i];
    }
    if (g > best) { best = g; best_y = y; }
  }
  return {best, best_y};
}

// Golden-section polish of a sampled maximum of G within [y - h, y + h].
std::pair<double, double> polish(const WindowSeries& s, double y, double h, double g_at_y) {
  if (s.w.empty()) return {g_at_y, y};
  const double phi_g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = y - h, b = y + h;
  double c = b - phi_g * (b - a), d = a + phi_g * (b - a);
  double fc = s.eval(c), fd = s.eval(d);
  for (int it = 0; it < 40; ++it) {
    if (fc > fd) { b = d; d = c; fd = fc; c = b - phi_g * (b - a); fc = s.eval(c); }
    else { a = c; c = d; fc = fd; d = a + phi_g * (b - a); fd = s.eval(d); }
  }
  const double ym = 0.5 * (a + b), gm = s.eval(ym);
  if (gm > g_at_y) return {gm, ym};
  return {g_at_y, y};
}

double block_wiener(const TrigPoly& v) { return v.wiener_norm(); }
double block_wiener(const GridField& v) { return v.wiener_norm(); }

}  // namespace

double CutoffFamily::scale(Dyadic N) const { return std::pow(static_cast<double>(N), sigma); }

double CutoffFamily::profile(double x) const {
  const double c = chi(x);
  if (!partition_normalized || c == 0.0) return c;
  const double f = std::floor(x);
  double sum = 0.0;
  for (int j = -1; j <= 2; ++j) sum += chi(x - (f + j));
  return c / sum;
}

double CutoffFamily::sq_transform(double omega) const {
  omega = std::abs(omega);
  if (omega > kSharpCutoff) return 0.0;
  const auto& t = sharp_table(partition_normalized);
  return cosine_sum(t.f, t.dx, omega);
}

double CutoffFamily::l2_norm() const {
  static const double v[2] = {std::sqrt(CutoffFamily{1.0, false}.sq_transform(0.0)),
                              std::sqrt(CutoffFamily{1.0, true}.sq_transform(0.0))};
  return v[partition_normalized ? 1 : 0];
}

double CutoffFamily::derivative_sup() const {
  static const double v = [] {
    double m = 0.0;
    for (int j = 0; j <= 200000; ++j) {
      const double x = kChiInner + (kChiOuter - kChiInner) * j / 200000.0;
      m = std::max(m, std::abs(chi_derivative(x)));
    }
    return m;
  }();
  return v;
}

double CutoffFamily::plane_wave_value(Dyadic N) const {
  return std::sqrt(scale(N)) * l2_norm();
}

namespace {

template <class F>
WindowedNorm windowed_impl(const F& u, Dyadic N, const CutoffFamily& family, const NormOptions& opts);

template <>
WindowedNorm windowed_impl(const TrigPoly& u, Dyadic N, const CutoffFamily& family,
                           const NormOptions& opts) {
  WindowedNorm out;
  if (u.empty()) return out;
  const double S = family.scale(N);
  WindowTransform W(family, S, opts.window);
  const WindowSeries s = series_of(u, W);
  const double lip_pt = opts.window == WindowKind::Sharp
                            ? family.derivative_sup() / S * u.wiener_norm() * std::sqrt(1.5 * S)
                            : std::numeric_limits<double>::infinity();

  if (opts.mode == SupMode::Lattice) {
    const std::size_t J = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(std::max(opts.scan_length, 4 * S) / S)));
    double best = -1.0, by = 0.0;
    for (std::size_t j = 0; j <= J; ++j) {
      const double y = opts.scan_origin + static_cast<double>(j) * S;
      const double g = s.eval(y);
      if (g > best) { best = g; by = y; }
    }
    out.value = std::sqrt(std::max(best, 0.0));
    out.center = by;
    out.spacing = S;
    return out;
  }

  if (s.w.empty()) {
    out.value = std::sqrt(std::max(s.c0, 0.0));
    out.center = opts.scan_origin;
    return out;
  }
  double Y;
  if (u.module().dimension() == 1)
    Y = 2.0 * kPi / std::abs(u.module().generators()[0]);
  else
    Y = std::max(opts.scan_length, 4.0 * S);
  double h = std::min(S / 16.0, kPi / (8.0 * s.max_w));
  std::size_t count = static_cast<std::size_t>(std::ceil(Y / h)) + 1;
  if (count > opts.max_centers) {
    count = opts.max_centers;
    h = Y / static_cast<double>(count - 1);
  }
  auto [g, y] = scan_series(s, opts.scan_origin, h, count);
  const double gap_bound_sq = g;
  auto [gp, yp] = polish(s, y, h, g);
  out.value = std::sqrt(std::max(gp, 0.0));
  out.center = yp;
  out.spacing = h;
  const double upper = std::sqrt(std::max(gap_bound_sq, 0.0)) + sampling_gap(s, gap_bound_sq, h, lip_pt);
  out.certified_gap = std::max(0.0, upper - out.value);
  return out;
}

template <>
WindowedNorm windowed_impl(const GridField& u, Dyadic N, const CutoffFamily& family,
                           const NormOptions& opts) {
  WindowedNorm out;
  const double S = family.scale(N);
  if (S > u.period() / 4.0)
    throw Error(ErrorCode::WindowExceedsTorus,
                "window scale " + std::to_string(S) + " exceeds a quarter of the torus");
  WindowTransform W(family, S, opts.window);
  const WindowSeries s = series_of(u, W);
  if (s.w.empty()) {
    out.value = std::sqrt(std::max(s.c0, 0.0));
    return out;
  }
  const double lip_pt = opts.window == WindowKind::Sharp
                            ? family.derivative_sup() / S * u.wiener_norm() * std::sqrt(1.5 * S)
                            : std::numeric_limits<double>::infinity();
  if (opts.mode == SupMode::Lattice) {
    const std::size_t J = static_cast<std::size_t>(std::floor(u.period() / S));
    double best = -1.0, by = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      const double g = s.eval(static_cast<double>(j) * S);
      if (g > best) { best = g; by = static_cast<double>(j) * S; }
    }
    out.value = std::sqrt(std::max(best, 0.0));
    out.center = by;
    out.spacing = S;
    return out;
  }
  const double h_target = std::min(S / 16.0, kPi / (8.0 * s.max_w));
  std::size_t P = fft::next_pow2(static_cast<std::size_t>(std::ceil(u.period() / h_target)));
  P = std::max<std::size_t>(P, 16);
  std::vector<cplx> a(P);
  a[0] += s.c0;
  for (std::size_t i = 0; i < s.w.size(); ++i) {
    const long long k = std::llround(s.w[i] * u.L());
    a[fft::slot_of(k, P)] += s.c[i];
    a[fft::slot_of(-k, P)] += std::conj(s.c[i]);
  }
  auto G = fft::backward(a);
  std::size_t best = 0;
  for (std::size_t m = 1; m < P; ++m)
    if (G[m].real() > G[best].real()) best = m;
  const double h = u.period() / static_cast<double>(P);
  const double gmax = G[best].real();
  auto [gp, yp] = polish(s, h * static_cast<double>(best), h, gmax);
  out.value = std::sqrt(std::max(gp, 0.0));
  out.center = yp;
  out.spacing = h;
  const double upper = std::sqrt(std::max(gmax, 0.0)) + sampling_gap(s, gmax, h, lip_pt);
  out.certified_gap = std::max(0.0, upper - out.value);
  return out;
}

template <class F>
NormReport uls_norm_impl(const F& u, double s, const DispersionSymbol& sym,
                         const CutoffFamily& family, const NormOptions& opts, bool fattened) {
  if (s < 0) throw Error(ErrorCode::InvalidArgument, "s must be >= 0");
  if (std::abs(sym.sigma - family.sigma) > 1e-15)
    throw Error(ErrorCode::InvalidArgument, "cut-off family sigma differs from the symbol's");
  NormReport rep;
  rep.s = s;
  const Dyadic N_max = opts.n_max ? *opts.n_max : dyadic_cover(max_frequency(u));
  auto blocks = dyadics_upto(N_max);
  std::vector<WindowedNorm> res(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t i) {
    const Dyadic N = blocks[i];
    const F v = fattened ? project_fat(N, u) : project(N, u);
    res[i] = windowed_impl(v, N, family, opts);
  });
  double sq = 0.0, up = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const double w = std::pow(static_cast<double>(blocks[i]), s);
    rep.per_block[blocks[i]] = {res[i].value, res[i].center, res[i].certified_gap};
    sq += std::pow(w * res[i].value, 2);
    up += std::pow(w * (res[i].value + res[i].certified_gap), 2);
    rep.sup_grid_spacing = std::max(rep.sup_grid_spacing, res[i].spacing);
  }
  rep.value = std::sqrt(sq);
  rep.certified_gap = std::max(0.0, std::sqrt(up) - rep.value);
  if constexpr (std::is_same_v<F, GridField>) {
    const double cut = kPhiOuter * static_cast<double>(N_max);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(u.frequency(i)) > cut) rep.unresolved_tail += std::abs(u.coefficients()[i]);
  }
  return rep;
}

template <class F>
double wiener_bound_impl(const F& u, double s, const CutoffFamily& family) {
  const Dyadic N_max = dyadic_cover(max_frequency(u));
  double sq = 0.0;
  for (Dyadic N : dyadics_upto(N_max)) {
    const double b = block_wiener(project(N, u));
    sq += std::pow(std::pow(static_cast<double>(N), s) * family.plane_wave_value(N) * b, 2);
  }
  return std::sqrt(sq);
}

}  // namespace

WindowedNorm windowed_norm(const TrigPoly& u, Dyadic N, const CutoffFamily& family,
                           const NormOptions& opts) {
  return windowed_impl(u, N, family, opts);
}

WindowedNorm windowed_norm(const GridField& u, Dyadic N, const CutoffFamily& family,
                           const NormOptions& opts) {
  return windowed_impl(u, N, family, opts);
}

NormReport uls_norm(const TrigPoly& u, double s, const DispersionSymbol& sym,
                    const CutoffFamily& family, const NormOptions& opts, bool fattened) {
  return uls_norm_impl(u, s, sym, family, opts, fattened);
}

NormReport uls_norm(const GridField& u, double s, const DispersionSymbol& sym,
                    const CutoffFamily& family, const NormOptions& opts, bool fattened) {
  return uls_norm_impl(u, s, sym, family, opts, fattened);
}

double uls_norm_wiener_bound(const TrigPoly& u, double s, const CutoffFamily& family) {
  return wiener_bound_impl(u, s, family);
}

double uls_norm_wiener_bound(const GridField& u, double s, const CutoffFamily& family) {
  return wiener_bound_impl(u, s, family);
}

template <class F>
std::map<std::string, double> equiv_norm_variants(const F& u, double s, const DispersionSymbol& sym,
                                                  const CutoffFamily& family,
                                                  const NormOptions& opts) {
  std::map<std::string, double> out;
  NormOptions o = opts;
  o.mode = SupMode::Lattice;
  o.window = WindowKind::Sharp;
  out["lattice"] = uls_norm(u, s, sym, family, o).value;
  o.mode = SupMode::Translation;
  out["translation"] = uls_norm(u, s, sym, family, o).value;
  out["fattened_projection"] = uls_norm(u, s, sym, family, o, true).value;
  o.window = WindowKind::Mollified;
  out["mollified_cutoff"] = uls_norm(u, s, sym, family, o).value;
  return out;
}

template std::map<std::string, double> equiv_norm_variants(const TrigPoly&, double,
                                                           const DispersionSymbol&,
                                                           const CutoffFamily&, const NormOptions&);
template std::map<std::string, double> equiv_norm_variants(const GridField&, double,
                                                           const DispersionSymbol&,
                                                           const CutoffFamily&, const NormOptions&);

nlohmann::json NormReport::to_json() const {
  nlohmann::json j;
  j["value"] = value;
  j["s"] = s;
  j["sup_grid_spacing"] = sup_grid_spacing;
  j["certified_gap"] = certified_gap;
  j["unresolved_tail"] = unresolved_tail;
  auto& b = j["per_block"] = nlohmann::json::array();
  for (auto& [N, v] : per_block)
    b.push_back({{"N", N}, {"value", v.value}, {"center", v.center}, {"gap", v.gap}});
  return j;
}

// ---- sup norms ----

namespace {

struct SupSeries {
  std::vector<double> w;
  std::vector<cplx> c;
  double l1 = 0, l1w = 0, l1w2 = 0;
  double eval_sq(double x) const {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += c[i] * std::polar(1.0, w[i] * x);
    return std::norm(acc);
  }
  void finish() {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double a = std::abs(c[i]);
      l1 += a;
      l1w += std::abs(w[i]) * a;
      l1w2 += w[i] * w[i] * a;
    }
  }
};

// second derivative of |f|^2 is bounded by 2(sum|w||c|)^2 + 2(sum|c|)(sum w^2|c|)
double sup_gap(const SupSeries& s, double fmax, double h) {
  const double first = s.l1w * h / 2.0;
  const double curv = 2.0 * s.l1w * s.l1w + 2.0 * s.l1 * s.l1w2;
  const double second = std::sqrt(fmax * fmax + curv * h * h / 8.0) - fmax;
  return std::min(first, second);
}

}  // namespace

SupEstimate sup_norm(const TrigPoly& u, int j, const SupOptions& opts) {
  SupSeries s;
  for (const auto& t : u.terms()) {
    const double lam = u.frequency(t);
    const cplx c = t.coef * std::pow(cplx(0.0, lam), j);
    if (c == cplx(0.0)) continue;
    s.w.push_back(lam);
    s.c.push_back(c);
  }
  s.finish();
  SupEstimate out;
  if (s.w.empty()) return out;
  double wmax = 0.0;
  for (double w : s.w) wmax = std::max(wmax, std::abs(w));
  if (wmax == 0.0) {
    out.value = std::abs(s.c[0]);
    return out;
  }
  const double X = u.module().dimension() == 1 ? 2.0 * kPi / std::abs(u.module().generators()[0])
                                              : opts.window;
  double h = kPi / (8.0 * wmax);
  std::size_t count = static_cast<std::size_t>(std::ceil(X / h)) + 1;
  if (count > opts.max_points) {
    count = opts.max_points;
    h = X / static_cast<double>(count - 1);
  }
  const std::size_t K = s.w.size();
  std::vector<cplx> z(K), r(K);
  std::vector<double> vals(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double x = static_cast<double>(m) * h;
    if (m % 256 == 0)
      for (std::size_t i = 0; i < K; ++i) {
        z[i] = s.c[i] * std::polar(1.0, s.w[i] * x);
        r[i] = std::polar(1.0, s.w[i] * h);
      }
    cplx acc = 0.0;
    for (std::size_t i = 0; i < K; ++i) { acc += z[i]; z[i] *= r[i]; }
    vals[m] = std::norm(acc);
  }
  // polish the largest few sampled local maxima
  std::vector<std::size_t> peaks;
  for (std::size_t m = 0; m < count; ++m) {
    const bool left = m == 0 || vals[m] >= vals[m - 1];
    const bool right = m + 1 == count || vals[m] >= vals[m + 1];
    if (left && right) peaks.push_back(m);
  }
  std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return vals[a] > vals[b]; });
  if (peaks.size() > 16) peaks.resize(16);
  const double sampled = std::sqrt(vals[peaks.front()]);
  double best = vals[peaks.front()], at = static_cast<double>(peaks.front()) * h;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (auto m : peaks) {
    double a = (static_cast<double>(m) - 1.0) * h, b = (static_cast<double>(m) + 1.0) * h;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = s.eval_sq(c), fd = s.eval_sq(d);
    for (int it = 0; it < 60; ++it) {
      if (fc > fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = s.eval_sq(c); }
      else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = s.eval_sq(d); }
    }
    const double xm = 0.5 * (a + b), fm = s.eval_sq(xm);
    if (fm > best) { best = fm; at = xm; }
  }
  out.value = std::sqrt(best);
  out.at = at;
  out.gap = std::max(0.0, sampled + sup_gap(s, sampled, h) - out.value);
  return out;
}

SupEstimate sup_norm(const GridField& u, int j, const SupOptions&) {
  const GridField v = j == 0 ? u : gf_multiplier(u, [j](double xi) { return std::pow(cplx(0.0, xi), j); });
  SupSeries s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v.coefficients()[i] != cplx(0.0)) {
      s.w.push_back(v.frequency(i));
      s.c.push_back(v.coefficients()[i]);
    }
  s.finish();
  SupEstimate out;
  if (s.w.empty()) return out;
  constexpr std::size_t kFactor = 4;
  auto fine = gf_upsample(v, kFactor);
  std::size_t best = 0;
  for (std::size_t m = 1; m < fine.size(); ++m)
    if (std::norm(fine[m]) > std::norm(fine[best])) best = m;
  const double h = v.period() / static_cast<double>(fine.size());
  out.value = std::abs(fine[best]);
  out.at = h * static_cast<double>(best);
  out.gap = sup_gap(s, out.value, h);
  return out;
}

double ck_norm(const TrigPoly& u, int k, const SupOptions& opts) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  double s = 0.0;
  for (int j = 0; j <= k; ++j) s += sup_norm(u, j, opts).value;
  return s;
}

double ck_norm(const GridField& u, int k, const SupOptions& opts) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 0");
  double s = 0.0;
  for (int j = 0; j <= k; ++j) s += sup_norm(u, j, opts).value;
  return s;
}

}  // namespace uls
