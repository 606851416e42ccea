#include "uls/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include "json.hpp"

#include "uls/errors.hpp"

namespace uls {
namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

double japanese(double xi) { return std::sqrt(1.0 + xi * xi); }

// The nominal relative step 1e-4 is only usable for low orders: a k-th
// difference amplifies rounding by ~h^{-k}, so the step grows with k to sit
// near the truncation/rounding balance eps^{1/(k+2)}.
double fd_step(int k, double xi) {
  const double rel = std::max(1e-4, std::pow(2.0, -52.0 / (k + 2)));
  return rel * japanese(xi);
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

// Tail slope of log(max_{+-xi} |f|) vs log<xi> over the upper half (in log
// scale) of the grid magnitudes.
double tail_slope(std::span<const double> grid,
                  const std::function<double(double)>& magnitude) {
  std::map<double, double> per_scale;
  for (double xi : grid) {
    const double a = std::abs(xi);
    if (a < 1.0) continue;
    double& v = per_scale[a];
    v = std::max(v, magnitude(xi));
  }
  if (per_scale.size() < 2) return 0.0;
  const double top = per_scale.rbegin()->first;
  const double cut = std::sqrt(top);
  std::vector<double> xs, ys;
  for (auto [a, v] : per_scale) {
    if (a < cut || !(v > 0.0)) continue;
    xs.push_back(std::log(japanese(a)));
    ys.push_back(std::log(v));
  }
  return fit_slope(xs, ys);
}

}  // namespace

cplx DispersionSymbol::d(double xi) const {
  if (derivative) return derivative(xi);
  return fd_derivative(*this, 1, xi);
}

cplx fd_derivative(const DispersionSymbol& sym, int k, double xi) {
  if (k == 0) return sym.evaluate(xi);
  const double h = fd_step(k, xi);
  cplx acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binom(k, j) * sym.evaluate(xi + (0.5 * k - j) * h);
  }
  return acc / std::pow(h, k);
}

DispersionSymbol make_schrodinger() {
  DispersionSymbol s;
  s.name = "schrodinger";
  s.evaluate = [](double xi) { return I * (xi * xi); };
  s.derivative = [](double xi) { return I * (2.0 * xi); };
  s.sigma = 1.0;
  s.preserves_reality = false;
  return s;
}

DispersionSymbol make_airy() {
  DispersionSymbol s;
  s.name = "airy";
  s.evaluate = [](double xi) { return -I * (xi * xi * xi); };
  s.derivative = [](double xi) { return -I * (3.0 * xi * xi); };
  s.sigma = 2.0;
  s.preserves_reality = true;
  return s;
}

DispersionSymbol make_polynomial_symbol(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (deg < 2)
    throw Error(ErrorCode::InvalidArgument,
                "polynomial symbol needs degree >= 2 (sigma = deg - 1 > 0)");
  DispersionSymbol s;
  s.name = "poly:" + nlohmann::json(coeffs).dump();
  s.evaluate = [coeffs](double xi) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * xi + *it;
    return I * v;
  };
  s.derivative = [coeffs](double xi) {
    double v = 0.0;
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) v = v * xi + k * coeffs[k];
    return I * v;
  };
  s.sigma = deg - 1;
  // conj(A(xi)) = A(-xi) iff only odd powers appear.
  bool odd_only = true;
  for (std::size_t k = 0; k < coeffs.size(); k += 2)
    if (coeffs[k] != 0.0) odd_only = false;
  s.preserves_reality = odd_only;
  return s;
}

DispersionSymbol parse_symbol(const std::string& spec) {
  if (spec == "schrodinger") return make_schrodinger();
  if (spec == "airy") return make_airy();
  if (spec.rfind("poly:", 0) == 0) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec.substr(5));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, "bad polynomial symbol: " + spec);
    }
    if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "poly: expects a list");
    return make_polynomial_symbol(j.get<std::vector<double>>());
  }
  throw Error(ErrorCode::InvalidArgument, "unknown symbol '" + spec + "'");
}

std::vector<double> dyadic_validation_grid(int j_max) {
  std::vector<double> g;
  for (int j = 0; j <= j_max; ++j) {
    g.push_back(std::ldexp(1.0, j));
    g.push_back(-std::ldexp(1.0, j));
  }
  std::sort(g.begin(), g.end());
  return g;
}

ValidationReport validate_symbol(const DispersionSymbol& sym, int k_max,
                                 std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty validation grid");
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 0");

  ValidationReport rep;
  for (double xi : grid) {
    const cplx a = sym.evaluate(xi);
    const double rel = std::abs(a.real()) / (1.0 + std::abs(a));
    rep.max_real_part = std::max(rep.max_real_part, rel);
    if (!(rel <= 1e-12))
      throw Error(ErrorCode::NotPurelyImaginary,
                  "Re A(" + std::to_string(xi) + ") = " + std::to_string(a.real()));
  }
  for (double xi : grid) {
    if (!std::isfinite(std::abs(sym.evaluate(xi))))
      throw Error(ErrorCode::OrderViolation,
                  "A is not finite at xi = " + std::to_string(xi));
  }

  const double order = sym.sigma + 1.0;
  rep.fitted_order = tail_slope(grid, [&](double xi) { return std::abs(sym.evaluate(xi)); });
  if (rep.fitted_order > order + 0.1)
    throw Error(ErrorCode::OrderViolation,
                "fitted growth " + std::to_string(rep.fitted_order) +
                    " exceeds declared order " + std::to_string(order));
  rep.fitted_sigma = tail_slope(grid, [&](double xi) { return std::abs(sym.d(xi)); });

  rep.passed = true;
  for (int k = 0; k <= k_max; ++k) {
    DerivativeBound b;
    b.order = k;
    for (double xi : grid) {
      const double v = std::abs(fd_derivative(sym, k, xi));
      const double r = v / std::pow(japanese(xi), order - k);
      if (!std::isfinite(r)) {
        b.constant = std::numeric_limits<double>::infinity();
        b.worst_point = xi;
      } else if (r > b.constant) {
        b.constant = r;
        b.worst_point = xi;
      }
    }
    rep.worst_ratio = std::max(rep.worst_ratio, b.constant);
    if (!(b.constant <= kUnboundedRatio)) rep.passed = false;
    rep.bounds.push_back(b);
  }
  return rep;
}

}  // namespace uls
