#include "uls/bump.hpp"

#include <cmath>

namespace uls {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}) without underflow.
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = smooth_step(t);
  return s * (1.0 - s) * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
}

double phi(double xi) {
  const double a = std::abs(xi);
  if (a <= 1.0) return 1.0;
  if (a >= kPhiOuter) return 0.0;
  // Written as s(1 - t) rather than 1 - s(t): keeps full relative precision
  // near the outer edge.
  return smooth_step((kPhiOuter - a) / (kPhiOuter - 1.0));
}

double phi_derivative(double xi) {
  const double a = std::abs(xi);
  if (a <= 1.0 || a >= kPhiOuter) return 0.0;
  const double w = kPhiOuter - 1.0;
  const double d = -smooth_step_derivative((kPhiOuter - a) / w) / w;
  return xi < 0 ? -d : d;
}

double chi(double x) {
  const double a = std::abs(x);
  if (a <= kChiInner) return 1.0;
  if (a >= kChiOuter) return 0.0;
  return smooth_step((kChiOuter - a) / (kChiOuter - kChiInner));
}

double chi_derivative(double x) {
  const double a = std::abs(x);
  if (a <= kChiInner || a >= kChiOuter) return 0.0;
  const double w = kChiOuter - kChiInner;
  const double d = -smooth_step_derivative((kChiOuter - a) / w) / w;
  return x < 0 ? -d : d;
}

}  // namespace uls
