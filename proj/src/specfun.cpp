// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/specfun.hpp"

#include <cmath>
#include <string>

#include "hatsim/errors.hpp"

namespace hatsim::specfun {

namespace {

constexpr double kBig = 1e200;
constexpr double kLogBig = 460.51701859880914;  // log(1e200)
const Complex I(0.0, 1.0);

void check_order(int n, const Limits& lim) {
  if (n < 0 || n > lim.order_cap)
    throw DomainError("spherical Bessel order " + std::to_string(n) + " outside [0, " +
                      std::to_string(lim.order_cap) + "]");
}

void check_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("non-finite Bessel argument");
}

Scaled normalize(Complex v, Complex d, double log_scale) {
  double mag = std::max(std::abs(v), std::abs(d));
  if (mag > 0.0 && std::isfinite(mag)) {
    v /= mag;
    d /= mag;
    log_scale += std::log(mag);
  }
  return {v, d, log_scale};
}

// Power series, used for |z| <= 0.5.
Scaled j_series(int n, Complex z) {
  // z^n / (2n+1)!! in log form
  double log_pref = 0.0;
  for (int k = 1; k <= n; ++k) log_pref -= std::log(2.0 * k + 1.0);
  const double az = std::abs(z);
  Complex phase = 1.0;
  if (n > 0) {
    phase = std::pow(z / az, n);
    log_pref += n * std::log(az);
  }
  // sum_k t_k with t_0 = 1, t_k = t_{k-1} * (-z^2/2) / (k (2n+2k+1))
  Complex sum = 1.0, dsum = double(n) / z;
  Complex t = 1.0;
  const Complex w = -0.5 * z * z;
  for (int k = 1; k < 60; ++k) {
    t *= w / (double(k) * (2.0 * n + 2.0 * k + 1.0));
    sum += t;
    dsum += t * double(n + 2 * k) / z;
    if (std::abs(t) < 1e-18 * std::abs(sum)) break;
  }
  return normalize(phase * sum, phase * dsum, log_pref);
}

Scaled j_miller(int n, Complex z) {
  const double az = std::abs(z);
  const int start = std::max(n, static_cast<int>(az)) + 30 + static_cast<int>(3.0 * std::cbrt(az));
  Complex f_next = 0.0;  // f_{k+1}
  Complex f = 1e-30;     // f_k
  double acc = 0.0;
  Complex rec_n = 0.0, rec_n1 = 0.0;
  double acc_rec = 0.0;
  Complex f0 = 0.0, f1 = 0.0;
  for (int k = start; k >= 1; --k) {
    Complex f_prev = (2.0 * k + 1.0) / z * f - f_next;
    f_next = f;
    f = f_prev;  // now f = f_{k-1}, f_next = f_k
    if (std::abs(f) > kBig) {
      f *= 1.0 / kBig;
      f_next *= 1.0 / kBig;
      acc += kLogBig;
    }
    if (k - 1 == n) {
      rec_n = f;
      rec_n1 = f_next;
      acc_rec = acc;
    }
    if (k == 1) {
      f0 = f;
      f1 = f_next;
    }
  }
  // exp(-|Im z|)-scaled closed forms of j0, j1
  const double t = std::abs(z.imag());
  const Complex ep = std::exp(I * z - t), em = std::exp(-I * z - t);
  const Complex s = (ep - em) / (2.0 * I), c = (ep + em) / 2.0;
  const Complex j0 = s / z;
  const Complex j1 = s / (z * z) - c / z;
  const double m = std::max(std::abs(f0), std::abs(f1));
  f0 /= m;
  f1 /= m;
  const Complex lambda = (j0 * std::conj(f0) + j1 * std::conj(f1)) / (std::norm(f0) + std::norm(f1));
  // j_n = lambda/m * rec_n * exp(acc_rec - acc) * exp(t)
  const double log_scale = acc_rec - acc - std::log(m) + t;
  const Complex jn = lambda * rec_n;
  const Complex jn1 = lambda * rec_n1;
  return normalize(jn, double(n) / z * jn - jn1, log_scale);
}

}  // namespace

Scaled sph_j_scaled(int n, Complex z, const Limits& lim) {
  check_order(n, lim);
  check_finite(z);
  if (z == Complex(0.0)) {
    if (n == 0) return {1.0, 0.0, 0.0};
    if (n == 1) return {0.0, 1.0 / 3.0, 0.0};
    return {0.0, 0.0, 0.0};
  }
  if (std::abs(z) <= 0.5) return j_series(n, z);
  return j_miller(n, z);
}

Scaled sph_h_scaled(int n, Complex z, const Limits& lim) {
  check_order(n, lim);
  check_finite(z);
  if (z == Complex(0.0)) throw DomainError("h_n singular at z = 0");
  // exp(i z) = exp(i Re z) * exp(-Im z)
  const Complex e = std::exp(I * z.real());
  Complex h_prev = -I * e / z;                      // h_0
  Complex h = -e * (1.0 / z + I / (z * z));         // h_1
  double log_scale = -z.imag();
  if (n == 0) return normalize(h_prev, -h, log_scale);
  for (int k = 1; k < n; ++k) {
    Complex h_next = (2.0 * k + 1.0) / z * h - h_prev;
    h_prev = h;
    h = h_next;
    if (std::abs(h) > kBig) {
      h *= 1.0 / kBig;
      h_prev *= 1.0 / kBig;
      log_scale += kLogBig;
    }
  }
  // h = h_n, h_prev = h_{n-1}
  return normalize(h, h_prev - double(n + 1) / z * h, log_scale);
}

namespace {

Complex unscale(Complex mantissa, double log_scale, const Limits& lim) {
  if (mantissa == Complex(0.0)) return 0.0;
  const double log_mag = log_scale + std::log(std::abs(mantissa));
  if (log_mag > std::log(lim.magnitude_cap))
    throw OverflowError("spherical Bessel magnitude exceeds representable range");
  if (log_mag < -745.0) return 0.0;
  return mantissa * std::exp(log_scale);
}

Complex eval(BesselKind kind, int n, Complex z, const Limits& lim, bool deriv) {
  check_order(n, lim);
  if (kind != BesselKind::J && z == Complex(0.0))
    throw DomainError("y_n and h_n are singular at z = 0");
  if (kind == BesselKind::J) {
    Scaled j = sph_j_scaled(n, z, lim);
    return unscale(deriv ? j.deriv : j.value, j.log_scale, lim);
  }
  Scaled h = sph_h_scaled(n, z, lim);
  Complex hv = unscale(deriv ? h.deriv : h.value, h.log_scale, lim);
  if (kind == BesselKind::H1) return hv;
  Scaled j = sph_j_scaled(n, z, lim);
  Complex jv = unscale(deriv ? j.deriv : j.value, j.log_scale, lim);
  return -I * (hv - jv);
}

}  // namespace

Complex sph_bessel(BesselKind kind, int n, Complex z, const Limits& lim) {
  return eval(kind, n, z, lim, false);
}

Complex sph_bessel_deriv(BesselKind kind, int n, Complex z, const Limits& lim) {
  return eval(kind, n, z, lim, true);
}

double legendre_p(int n, double x) {
  if (n < 0) throw DomainError("Legendre degree must be non-negative");
  if (!(std::abs(x) <= 1.0)) throw DomainError("Legendre argument outside [-1, 1]");
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> legendre_table(int n_max, double x) {
  if (n_max < 0) throw DomainError("Legendre degree must be non-negative");
  if (!(std::abs(x) <= 1.0)) throw DomainError("Legendre argument outside [-1, 1]");
  std::vector<double> p(n_max + 1);
  p[0] = 1.0;
  if (n_max >= 1) p[1] = x;
  for (int k = 1; k < n_max; ++k) p[k + 1] = ((2.0 * k + 1.0) * x * p[k] - k * p[k - 1]) / (k + 1.0);
  return p;
}

}  // namespace hatsim::specfun
