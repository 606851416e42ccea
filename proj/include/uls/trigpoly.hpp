#pragma once

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace uls {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxGenerators = 4;

// Integer coordinates of a frequency over the module generators. Unused
// trailing slots stay zero.
struct FreqVec {
  std::array<std::int32_t, kMaxGenerators> n{};

  FreqVec() = default;
  FreqVec(std::initializer_list<std::int32_t> v);

  friend auto operator<=>(const FreqVec&, const FreqVec&) = default;
  FreqVec operator+(const FreqVec& o) const;
  FreqVec operator-(const FreqVec& o) const;
  FreqVec operator-() const;
  bool is_zero() const;
};

struct FreqVecHash {
  std::size_t operator()(const FreqVec& v) const noexcept;
};

class FrequencyModule {
 public:
  // Throws RationallyDependent when some sum n_i w_i with ||n||_inf <= 64
  // vanishes below 1e-9, InvalidArgument on zero or too many generators.
  explicit FrequencyModule(std::vector<double> generators);
  static FrequencyModule integers() { return FrequencyModule({1.0}); }

  std::size_t dimension() const { return gens_.size(); }
  const std::vector<double>& generators() const { return gens_; }
  double value(const FreqVec& v) const;
  FreqVec unit(std::size_t i) const;

  friend bool operator==(const FrequencyModule& a, const FrequencyModule& b) {
    return a.gens_ == b.gens_;
  }

 private:
  std::vector<double> gens_;
};

struct Term {
  FreqVec key;
  cplx coef;
};

class TrigPoly {
 public:
  explicit TrigPoly(FrequencyModule module) : module_(std::move(module)) {}
  // Duplicate keys are summed, exact zeros dropped.
  TrigPoly(FrequencyModule module, std::vector<Term> terms);

  static TrigPoly monomial(const FrequencyModule& m, const FreqVec& key, cplx c);
  static TrigPoly constant(const FrequencyModule& m, cplx c);

  const FrequencyModule& module() const { return module_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  double frequency(const Term& t) const { return module_.value(t.key); }
  cplx coefficient(const FreqVec& key) const;
  double max_abs_frequency() const;
  // Wiener norm: sum of |a_lambda|. Bounds the sup norm.
  double wiener_norm() const;

 private:
  friend TrigPoly tp_from_sorted(FrequencyModule, std::vector<Term>);
  FrequencyModule module_;
  std::vector<Term> terms_;  // sorted by key, no duplicates
};

TrigPoly tp_add(const TrigPoly& u, const TrigPoly& v);
TrigPoly tp_sub(const TrigPoly& u, const TrigPoly& v);
TrigPoly tp_scale(const TrigPoly& u, cplx c);
TrigPoly tp_mul(const TrigPoly& u, const TrigPoly& v);
TrigPoly tp_conj(const TrigPoly& u);
TrigPoly tp_derivative(const TrigPoly& u);
TrigPoly tp_multiplier(const TrigPoly& u, const std::function<cplx(double)>& m);

struct PruneResult {
  TrigPoly poly;
  double dropped_mass = 0.0;
};
PruneResult tp_prune(const TrigPoly& u, double floor);

std::set<FreqVec> tp_spectrum(const TrigPoly& u);
// Exact integer-vector membership of every spectral key of u in the Z-span
// of m's generators.
bool tp_span_contains(const FrequencyModule& m, const TrigPoly& u);

std::vector<cplx> tp_eval(const TrigPoly& u, std::span<const double> points);
cplx tp_eval(const TrigPoly& u, double x);

// Max coefficientwise |u - v| over the union of keys.
double tp_max_coef_diff(const TrigPoly& u, const TrigPoly& v);

nlohmann::json tp_to_json(const TrigPoly& u);
TrigPoly tp_from_json(const nlohmann::json& j);

}  // namespace uls
