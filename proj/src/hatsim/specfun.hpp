// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <complex>
#include <vector>

namespace hatsim {

using Complex = std::complex<double>;

namespace specfun {

enum class BesselKind { J, Y, H1 };

struct Limits {
  int order_cap = 256;
  double magnitude_cap = 1e300;
};

inline constexpr Limits kDefaultLimits{};

// j_n, y_n or h_n^(1) at complex z.
Complex sph_bessel(BesselKind kind, int n, Complex z, const Limits& lim = kDefaultLimits);
Complex sph_bessel_deriv(BesselKind kind, int n, Complex z, const Limits& lim = kDefaultLimits);

// Value and z-derivative sharing one exponent: f = value * exp(log_scale).
struct Scaled {
  Complex value;
  Complex deriv;
  double log_scale = 0.0;
};

Scaled sph_j_scaled(int n, Complex z, const Limits& lim = kDefaultLimits);
Scaled sph_h_scaled(int n, Complex z, const Limits& lim = kDefaultLimits);

double legendre_p(int n, double x);
// P_0(x) .. P_nmax(x)
std::vector<double> legendre_table(int n_max, double x);

}  // namespace specfun
}  // namespace hatsim
