#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "uls/field_ops.hpp"
#include "uls/lp_calculus.hpp"

namespace uls {

// coef * u^p * conj(u)^q
struct Monomial {
  cplx coef;
  int p = 0;
  int q = 0;
};

struct NonlinearitySpec {
  // Q(r) = sum_k Q[k] r^k with r = |u|^2, or r = u when `reality` is set.
  std::vector<double> Q;
  std::vector<Monomial> Nl;
  bool reality = false;

  bool q_is_zero() const;
  bool nl_is_zero() const;
  int q_degree() const;   // -1 for zero
  int nl_degree() const;  // -1 for zero
  // Degree of the full expression N(u) - Q(.) d_x u in (u, conj u).
  int total_degree() const;
  // Invariants: each of Q, Nl zero or without a constant-only form; real Q;
  // reality mode forbids conj(u) and complex coefficients.
  void validate() const;
};

void to_json(nlohmann::json& j, const NonlinearitySpec& s);
void from_json(const nlohmann::json& j, NonlinearitySpec& s);

// N(u, conj u) - Q(.) * d_x(phi(xi/M)^2 u); M empty means no regularisation.
TrigPoly tp_nonlinearity(const TrigPoly& u, const NonlinearitySpec& spec,
                         std::optional<Dyadic> M = std::nullopt);
GridField gf_nonlinearity(const GridField& u, const NonlinearitySpec& spec,
                          std::optional<Dyadic> M = std::nullopt);

inline TrigPoly nonlinearity(const TrigPoly& u, const NonlinearitySpec& s, std::optional<Dyadic> M) {
  return tp_nonlinearity(u, s, M);
}
inline GridField nonlinearity(const GridField& u, const NonlinearitySpec& s, std::optional<Dyadic> M) {
  return gf_nonlinearity(u, s, M);
}

// Evaluates Q on a value (r = |z|^2 or z).
cplx eval_q(const NonlinearitySpec& s, cplx z);
cplx eval_nl(const NonlinearitySpec& s, cplx z);

}  // namespace uls
