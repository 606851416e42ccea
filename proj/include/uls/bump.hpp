#pragma once

// Smooth cut-off profiles shared by the frequency projections and the
// spatial windows.

namespace uls {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);
double smooth_step_derivative(double t);

// phi == 1 on |xi| <= 1, == 0 on |xi| >= 1.1, non-increasing in |xi|.
inline constexpr double kPhiOuter = 1.1;
double phi(double xi);
double phi_derivative(double xi);

// chi == 1 on |x| <= 1/4, == 0 on |x| >= 3/4.
inline constexpr double kChiInner = 0.25;
inline constexpr double kChiOuter = 0.75;
double chi(double x);
double chi_derivative(double x);

}  // namespace uls
