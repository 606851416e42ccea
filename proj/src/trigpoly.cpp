#include "uls/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "uls/errors.hpp"

namespace uls {

FreqVec::FreqVec(std::initializer_list<std::int32_t> v) {
  if (v.size() > kMaxGenerators)
    throw Error(ErrorCode::InvalidArgument, "frequency vector too long");
  std::copy(v.begin(), v.end(), n.begin());
}

FreqVec FreqVec::operator+(const FreqVec& o) const {
  FreqVec r;
  for (std::size_t i = 0; i < kMaxGenerators; ++i) r.n[i] = n[i] + o.n[i];
  return r;
}

FreqVec FreqVec::operator-(const FreqVec& o) const {
  FreqVec r;
  for (std::size_t i = 0; i < kMaxGenerators; ++i) r.n[i] = n[i] - o.n[i];
  return r;
}

FreqVec FreqVec::operator-() const {
  FreqVec r;
  for (std::size_t i = 0; i < kMaxGenerators; ++i) r.n[i] = -n[i];
  return r;
}

bool FreqVec::is_zero() const {
  return std::all_of(n.begin(), n.end(), [](auto x) { return x == 0; });
}

std::size_t FreqVecHash::operator()(const FreqVec& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto x : v.n) {
    h ^= static_cast<std::uint32_t>(x);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

namespace {

constexpr int kDependenceBound = 64;
constexpr double kDependenceTol = 1e-9;

// All sums sum_i n_i w_i with |n_i| <= bound, plus whether n == 0.
std::vector<std::pair<double, bool>> half_sums(std::span<const double> w) {
  std::vector<std::pair<double, bool>> out{{0.0, true}};
  for (double g : w) {
    std::vector<std::pair<double, bool>> next;
    next.reserve(out.size() * (2 * kDependenceBound + 1));
    for (auto [v, zero] : out)
      for (int k = -kDependenceBound; k <= kDependenceBound; ++k)
        next.emplace_back(v + k * g, zero && k == 0);
    out.swap(next);
  }
  return out;
}

void check_independent(const std::vector<double>& gens) {
  if (gens.size() < 2) return;
  const std::size_t h = gens.size() / 2;
  auto a = half_sums(std::span(gens).subspan(0, h));
  auto b = half_sums(std::span(gens).subspan(h));
  std::sort(a.begin(), a.end());
  for (auto [v, bzero] : b) {
    auto it = std::lower_bound(a.begin(), a.end(), std::make_pair(-v - kDependenceTol, false));
    for (; it != a.end() && it->first <= -v + kDependenceTol; ++it) {
      if (bzero && it->second) continue;
      if (std::abs(it->first + v) < kDependenceTol)
        throw Error(ErrorCode::RationallyDependent,
                    "generators satisfy an integer relation with coefficients <= 64");
    }
  }
}

}  // namespace

FrequencyModule::FrequencyModule(std::vector<double> generators)
    : gens_(std::move(generators)) {
  if (gens_.empty() || gens_.size() > kMaxGenerators)
    throw Error(ErrorCode::InvalidArgument, "module needs 1..4 generators");
  for (double g : gens_)
    if (!(g != 0.0) || !std::isfinite(g))
      throw Error(ErrorCode::InvalidArgument, "generators must be finite and nonzero");
  check_independent(gens_);
}

double FrequencyModule::value(const FreqVec& v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < gens_.size(); ++i) s += v.n[i] * gens_[i];
  return s;
}

FreqVec FrequencyModule::unit(std::size_t i) const {
  FreqVec v;
  v.n.at(i) = 1;
  return v;
}

TrigPoly tp_from_sorted(FrequencyModule m, std::vector<Term> terms) {
  TrigPoly p(std::move(m));
  p.terms_ = std::move(terms);
  return p;
}

TrigPoly::TrigPoly(FrequencyModule module, std::vector<Term> terms)
    : module_(std::move(module)) {
  for (const auto& t : terms)
    for (std::size_t i = module_.dimension(); i < kMaxGenerators; ++i)
      if (t.key.n[i] != 0)
        throw Error(ErrorCode::ModuleMismatch, "key has more coordinates than generators");
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().key == t.key)
      terms_.back().coef += t.coef;
    else
      terms_.push_back(t);
  }
  std::erase_if(terms_, [](const Term& t) { return t.coef == cplx(0.0); });
}

TrigPoly TrigPoly::monomial(const FrequencyModule& m, const FreqVec& key, cplx c) {
  return TrigPoly(m, {{key, c}});
}

TrigPoly TrigPoly::constant(const FrequencyModule& m, cplx c) {
  return TrigPoly(m, {{FreqVec{}, c}});
}

cplx TrigPoly::coefficient(const FreqVec& key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, const FreqVec& k) { return t.key < k; });
  return (it != terms_.end() && it->key == key) ? it->coef : cplx(0.0);
}

double TrigPoly::max_abs_frequency() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(frequency(t)));
  return m;
}

double TrigPoly::wiener_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coef);
  return s;
}

namespace {

void require_same(const TrigPoly& u, const TrigPoly& v) {
  if (!(u.module() == v.module()))
    throw Error(ErrorCode::ModuleMismatch, "operands live on different frequency modules");
}

TrigPoly merge(const TrigPoly& u, const TrigPoly& v, double sign) {
  require_same(u, v);
  auto a = u.terms(), b = v.terms();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].key < a[i].key) {
      out.push_back({b[j].key, sign * b[j].coef});
      ++j;
    } else {
      cplx c = a[i].coef + sign * b[j].coef;
      if (c != cplx(0.0)) out.push_back({a[i].key, c});
      ++i;
      ++j;
    }
  }
  return tp_from_sorted(u.module(), std::move(out));
}

}  // namespace

TrigPoly tp_add(const TrigPoly& u, const TrigPoly& v) { return merge(u, v, 1.0); }
TrigPoly tp_sub(const TrigPoly& u, const TrigPoly& v) { return merge(u, v, -1.0); }

TrigPoly tp_scale(const TrigPoly& u, cplx c) {
  if (c == cplx(0.0)) return TrigPoly(u.module());
  std::vector<Term> out(u.terms().begin(), u.terms().end());
  for (auto& t : out) t.coef *= c;
  return tp_from_sorted(u.module(), std::move(out));
}

TrigPoly tp_mul(const TrigPoly& u, const TrigPoly& v) {
  require_same(u, v);
  std::unordered_map<FreqVec, cplx, FreqVecHash> acc;
  acc.reserve(u.size() * v.size());
  for (const auto& a : u.terms())
    for (const auto& b : v.terms()) acc[a.key + b.key] += a.coef * b.coef;
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != cplx(0.0)) out.push_back({k, c});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  return tp_from_sorted(u.module(), std::move(out));
}

TrigPoly tp_conj(const TrigPoly& u) {
  std::vector<Term> out;
  out.reserve(u.size());
  for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it)
    out.push_back({-it->key, std::conj(it->coef)});
  // Negation reverses the lexicographic order.
  return tp_from_sorted(u.module(), std::move(out));
}

TrigPoly tp_derivative(const TrigPoly& u) {
  return tp_multiplier(u, [](double xi) { return cplx(0.0, xi); });
}

TrigPoly tp_multiplier(const TrigPoly& u, const std::function<cplx(double)>& m) {
  std::vector<Term> out;
  out.reserve(u.size());
  for (const auto& t : u.terms()) {
    cplx c = m(u.frequency(t)) * t.coef;
    if (c != cplx(0.0)) out.push_back({t.key, c});
  }
  return tp_from_sorted(u.module(), std::move(out));
}

PruneResult tp_prune(const TrigPoly& u, double floor) {
  if (floor < 0) throw Error(ErrorCode::InvalidArgument, "prune floor must be >= 0");
  PruneResult r{TrigPoly(u.module()), 0.0};
  std::vector<Term> keep;
  keep.reserve(u.size());
  for (const auto& t : u.terms()) {
    if (std::abs(t.coef) < floor)
      r.dropped_mass += std::abs(t.coef);
    else
      keep.push_back(t);
  }
  r.poly = tp_from_sorted(u.module(), std::move(keep));
  return r;
}

std::set<FreqVec> tp_spectrum(const TrigPoly& u) {
  std::set<FreqVec> s;
  for (const auto& t : u.terms())
    if (t.coef != cplx(0.0)) s.insert(t.key);
  return s;
}

namespace {

// Integer coordinates of w over m's generators, if w is one of them or an
// exact small combination (|n_i| <= bound) to 1e-12 relative.
bool represent(const FrequencyModule& m, double w, FreqVec& out) {
  const auto& g = m.generators();
  const int bound = g.size() <= 2 ? 64 : (g.size() == 3 ? 16 : 6);
  const double tol = 1e-12 * std::max(1.0, std::abs(w));
  FreqVec v;
  std::function<bool(std::size_t, double)> rec = [&](std::size_t i, double acc) {
    if (i == g.size()) {
      if (std::abs(acc - w) <= tol) { out = v; return true; }
      return false;
    }
    for (int k = -bound; k <= bound; ++k) {
      v.n[i] = k;
      if (rec(i + 1, acc + k * g[i])) return true;
    }
    v.n[i] = 0;
    return false;
  };
  return rec(0, 0.0);
}

}  // namespace

bool tp_span_contains(const FrequencyModule& m, const TrigPoly& u) {
  const std::size_t gu = u.module().dimension();
  for (const auto& t : u.terms())
    for (std::size_t i = gu; i < kMaxGenerators; ++i)
      if (t.key.n[i] != 0) return false;
  if (u.module() == m) return true;
  // Different module: if every generator of u's module is an integer
  // combination of m's, every key is too, by linearity.
  if (u.empty()) return true;
  for (double w : u.module().generators()) {
    FreqVec img;
    if (!represent(m, w, img)) return false;
  }
  return true;
}

cplx tp_eval(const TrigPoly& u, double x) {
  cplx s = 0.0;
  for (const auto& t : u.terms()) s += t.coef * std::polar(1.0, u.frequency(t) * x);
  return s;
}

std::vector<cplx> tp_eval(const TrigPoly& u, std::span<const double> points) {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (double x : points) out.push_back(tp_eval(u, x));
  return out;
}

double tp_max_coef_diff(const TrigPoly& u, const TrigPoly& v) {
  double m = 0.0;
  for (const auto& t : tp_sub(u, v).terms()) m = std::max(m, std::abs(t.coef));
  return m;
}

nlohmann::json tp_to_json(const TrigPoly& u) {
  nlohmann::json j;
  j["generators"] = u.module().generators();
  auto& terms = j["terms"] = nlohmann::json::array();
  const std::size_t g = u.module().dimension();
  for (const auto& t : u.terms()) {
    std::vector<int> n(t.key.n.begin(), t.key.n.begin() + g);
    terms.push_back({{"n", n}, {"re", t.coef.real()}, {"im", t.coef.imag()}});
  }
  return j;
}

TrigPoly tp_from_json(const nlohmann::json& j) {
  try {
    FrequencyModule m(j.at("generators").get<std::vector<double>>());
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      auto n = t.at("n").get<std::vector<int>>();
      if (n.size() != m.dimension())
        throw Error(ErrorCode::ModuleMismatch, "term key length differs from module dimension");
      Term term;
      std::copy(n.begin(), n.end(), term.key.n.begin());
      term.coef = {t.value("re", 0.0), t.value("im", 0.0)};
      terms.push_back(term);
    }
    return TrigPoly(m, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad trig polynomial json: ") + e.what());
  }
}

}  // namespace uls
