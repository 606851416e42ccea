#include "uls/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "uls/errors.hpp"
#include "uls/fft.hpp"

namespace uls {

bool NonlinearitySpec::q_is_zero() const {
  return std::all_of(Q.begin(), Q.end(), [](double c) { return c == 0.0; });
}

bool NonlinearitySpec::nl_is_zero() const {
  return std::all_of(Nl.begin(), Nl.end(), [](const Monomial& m) { return m.coef == cplx(0.0); });
}

int NonlinearitySpec::q_degree() const {
  for (int k = static_cast<int>(Q.size()) - 1; k >= 0; --k)
    if (Q[k] != 0.0) return k;
  return -1;
}

int NonlinearitySpec::nl_degree() const {
  int d = -1;
  for (const auto& m : Nl)
    if (m.coef != cplx(0.0)) d = std::max(d, m.p + m.q);
  return d;
}

int NonlinearitySpec::total_degree() const {
  int d = std::max(nl_degree(), 1);
  if (!q_is_zero()) d = std::max(d, (reality ? 1 : 2) * q_degree() + 1);
  return d;
}

void NonlinearitySpec::validate() const {
  if (!q_is_zero() && q_degree() < 1)
    throw Error(ErrorCode::InvalidArgument, "Q must be zero or of degree at least one");
  if (!nl_is_zero() && nl_degree() < 1)
    throw Error(ErrorCode::InvalidArgument, "N must be zero or of degree at least one");
  for (const auto& m : Nl)
    if (m.p < 0 || m.q < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial exponent");
  for (double c : Q)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite Q coefficient");
  if (reality) {
    for (const auto& m : Nl) {
      if (m.coef == cplx(0.0)) continue;
      if (m.q != 0 || m.coef.imag() != 0.0)
        throw Error(ErrorCode::InvalidArgument,
                    "reality mode needs N to be a real polynomial in u alone");
    }
  }
}

void to_json(nlohmann::json& j, const NonlinearitySpec& s) {
  j["Q"] = s.Q;
  auto& nl = j["Nl"] = nlohmann::json::array();
  for (const auto& m : s.Nl)
    nl.push_back({{"coef", {m.coef.real(), m.coef.imag()}}, {"p", m.p}, {"q", m.q}});
  j["reality"] = s.reality;
}

void from_json(const nlohmann::json& j, NonlinearitySpec& s) {
  s.Q = j.value("Q", std::vector<double>{});
  s.Nl.clear();
  if (j.contains("Nl"))
    for (const auto& m : j.at("Nl")) {
      Monomial mono;
      const auto& c = m.at("coef");
      if (c.is_array())
        mono.coef = {c.at(0).get<double>(), c.size() > 1 ? c.at(1).get<double>() : 0.0};
      else
        mono.coef = c.get<double>();
      mono.p = m.value("p", 0);
      mono.q = m.value("q", 0);
      s.Nl.push_back(mono);
    }
  s.reality = j.value("reality", false);
}

cplx eval_q(const NonlinearitySpec& s, cplx z) {
  const cplx r = s.reality ? z : cplx(std::norm(z));
  cplx acc = 0.0;
  for (auto it = s.Q.rbegin(); it != s.Q.rend(); ++it) acc = acc * r + *it;
  return acc;
}

cplx eval_nl(const NonlinearitySpec& s, cplx z) {
  cplx acc = 0.0;
  for (const auto& m : s.Nl) {
    if (m.coef == cplx(0.0)) continue;
    acc += m.coef * std::pow(z, m.p) * std::pow(std::conj(z), m.q);
  }
  return acc;
}

namespace {

Multiplier galerkin_derivative(std::optional<Dyadic> M) {
  if (!M) return [](double xi) { return cplx(0.0, xi); };
  const Dyadic m = *M;
  return [m](double xi) {
    const double p = phi_leq(m, xi);
    return cplx(0.0, xi * p * p);
  };
}

// u^p conj(u)^q with memoised powers.
class PowerCache {
 public:
  explicit PowerCache(const TrigPoly& u) : u_(u), ubar_(tp_conj(u)) {}
  const TrigPoly& pow(int p, bool conj) {
    auto& cache = conj ? bar_ : plain_;
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    TrigPoly v = p == 0 ? TrigPoly::constant(u_.module(), 1.0)
                        : tp_mul(this->pow(p - 1, conj), conj ? ubar_ : u_);
    return cache.emplace(p, std::move(v)).first->second;
  }

 private:
  const TrigPoly& u_;
  TrigPoly ubar_;
  std::map<int, TrigPoly> plain_, bar_;
};

}  // namespace

TrigPoly tp_nonlinearity(const TrigPoly& u, const NonlinearitySpec& spec, std::optional<Dyadic> M) {
  TrigPoly out(u.module());
  if (u.empty()) return out;
  PowerCache pc(u);
  for (const auto& m : spec.Nl) {
    if (m.coef == cplx(0.0)) continue;
    out = tp_add(out, tp_scale(tp_mul(pc.pow(m.p, false), pc.pow(m.q, true)), m.coef));
  }
  if (!spec.q_is_zero()) {
    const TrigPoly r = spec.reality ? u : tp_mul(u, tp_conj(u));
    TrigPoly q(u.module());
    for (int k = spec.q_degree(); k >= 0; --k) {
      q = tp_mul(q, r);
      if (spec.Q[k] != 0.0) q = tp_add(q, TrigPoly::constant(u.module(), spec.Q[k]));
    }
    const TrigPoly du = tp_multiplier(u, galerkin_derivative(M));
    out = tp_sub(out, tp_mul(q, du));
  }
  return out;
}

GridField gf_nonlinearity(const GridField& u, const NonlinearitySpec& spec, std::optional<Dyadic> M) {
  const std::size_t pad = fft::next_pow2(static_cast<std::size_t>(std::max(2, spec.total_degree())));
  auto us = gf_upsample(u, pad);
  std::vector<cplx> dus;
  const bool has_q = !spec.q_is_zero();
  if (has_q) dus = gf_upsample(gf_multiplier(u, galerkin_derivative(M)), pad);
  std::vector<cplx> out(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    cplx v = eval_nl(spec, us[i]);
    if (has_q) v -= eval_q(spec, us[i]) * dus[i];
    out[i] = v;
  }
  return gf_downsample(u.L(), out, u.size());
}

}  // namespace uls
