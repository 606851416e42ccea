#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace uls {

struct DispersionSymbol {
  std::string name;
  std::function<std::complex<double>(double)> evaluate;
  // Optional exact derivative; finite differences are used when empty.
  std::function<std::complex<double>(double)> derivative;
  double sigma = 1.0;  // order is sigma + 1
  int max_validated_derivative = 6;
  bool preserves_reality = false;

  std::complex<double> operator()(double xi) const { return evaluate(xi); }
  std::complex<double> d(double xi) const;
};

DispersionSymbol make_schrodinger();  // i xi^2
DispersionSymbol make_airy();         // -i xi^3
// A(xi) = i * sum_k coeffs[k] xi^k (coeffs[0] is the constant term).
DispersionSymbol make_polynomial_symbol(std::vector<double> coeffs);
// "schrodinger", "airy" or "poly:[c0,c1,...]".
DispersionSymbol parse_symbol(const std::string& spec);

struct DerivativeBound {
  int order = 0;
  double constant = 0.0;   // sup over grid of |d^k A| / <xi>^{sigma+1-k}
  double worst_point = 0.0;
};

struct ValidationReport {
  std::vector<DerivativeBound> bounds;
  double fitted_order = 0.0;  // slope of log|A| vs log<xi>, tail scales
  double fitted_sigma = 0.0;  // slope of log|A'| vs log<xi>
  double worst_ratio = 0.0;
  double max_real_part = 0.0;  // max |Re A| / (1 + |A|)
  bool passed = false;
};

inline constexpr double kUnboundedRatio = 1e6;

ValidationReport validate_symbol(const DispersionSymbol& sym, int k_max,
                                 std::span<const double> grid);

// {+-2^j : 0 <= j <= j_max}
std::vector<double> dyadic_validation_grid(int j_max = 10);

// k-th derivative by a central difference stencil at xi.
std::complex<double> fd_derivative(const DispersionSymbol& sym, int k, double xi);

}  // namespace uls
