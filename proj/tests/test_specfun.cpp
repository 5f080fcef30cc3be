// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hatsim/errors.hpp"
#include "hatsim/specfun.hpp"

using namespace hatsim;
using specfun::BesselKind;
using specfun::sph_bessel;
using specfun::sph_bessel_deriv;

namespace {
constexpr double kPi = std::numbers::pi;

bool close(Complex a, Complex b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }
bool close_rel(Complex a, Complex b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }
}  // namespace

TEST_CASE("elementary values") {
  CHECK(std::abs(sph_bessel(BesselKind::J, 0, kPi)) < 1e-15);
  CHECK(sph_bessel(BesselKind::J, 0, 0.0) == Complex(1.0));
  for (int n = 1; n < 6; ++n) CHECK(sph_bessel(BesselKind::J, n, 0.0) == Complex(0.0));
  CHECK(close(sph_bessel(BesselKind::H1, 0, Complex(0.0, 1.0)), -std::exp(-1.0), 1e-14));
  CHECK(close(sph_bessel_deriv(BesselKind::J, 0, kPi), -1.0 / kPi, 1e-14));
  CHECK(sph_bessel_deriv(BesselKind::J, 0, 0.0) == Complex(0.0));
}

TEST_CASE("reference values") {
  // 30-digit values of sqrt(pi/2z) J_{n+1/2}(z)
  CHECK(close_rel(sph_bessel(BesselKind::J, 5, 0.1), 9.616310232916446e-10, 1e-12));
  CHECK(close_rel(sph_bessel(BesselKind::J, 3, 2.5), 0.10392046970240394, 1e-13));
  CHECK(close_rel(sph_bessel(BesselKind::J, 0, 2.0), 0.45464871341284085, 1e-14));
  CHECK(close_rel(sph_bessel(BesselKind::J, 20, 3.0), 2.3942249272752632e-16, 1e-11));
  CHECK(close_rel(sph_bessel(BesselKind::J, 10, Complex(30.0, 5.0)),
                  Complex(-0.98183467028511265, -1.5691498687839946), 1e-12));
  CHECK(close_rel(sph_bessel(BesselKind::Y, 3, 2.5), -0.79660312325324946, 1e-13));
  CHECK(close_rel(sph_bessel(BesselKind::Y, 2, Complex(1.0, 1.0)), Complex(0.33694108567754842, 0.91999674620317183),
                  1e-13));
  CHECK(close_rel(sph_bessel(BesselKind::H1, 2, Complex(1.0, 1.0)),
                  Complex(-0.90098118563266178, 0.46921683453935754), 1e-13));
}

TEST_CASE("cross product j_n y_n' - j_n' y_n = 1/z^2") {
  for (int n : {0, 1, 4, 12, 30})
    for (Complex z : {Complex(0.5), Complex(3.0), Complex(17.0, 0.0), Complex(2.0, 1.5), Complex(40.0, -3.0)}) {
      const Complex w = sph_bessel(BesselKind::J, n, z) * sph_bessel_deriv(BesselKind::Y, n, z) -
                        sph_bessel_deriv(BesselKind::J, n, z) * sph_bessel(BesselKind::Y, n, z);
      CAPTURE(n);
      CAPTURE(z);
      CHECK(close_rel(w * z * z, 1.0, 1e-10));
    }
}

TEST_CASE("three-term recurrence") {
  for (Complex z : {Complex(0.7), Complex(9.0), Complex(4.0, 2.0)})
    for (int n = 1; n < 25; ++n) {
      const Complex lhs = sph_bessel(BesselKind::J, n - 1, z) + sph_bessel(BesselKind::J, n + 1, z);
      const Complex rhs = double(2 * n + 1) / z * sph_bessel(BesselKind::J, n, z);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(rhs), std::abs(sph_bessel(BesselKind::J, n - 1, z))));
    }
}

TEST_CASE("scaled forms agree with plain values") {
  for (int n : {0, 3, 15})
    for (Complex z : {Complex(0.2), Complex(5.0), Complex(3.0, 4.0)}) {
      const auto j = specfun::sph_j_scaled(n, z);
      const auto h = specfun::sph_h_scaled(n, z);
      CHECK(close_rel(j.value * std::exp(j.log_scale), sph_bessel(BesselKind::J, n, z), 1e-12));
      CHECK(close_rel(j.deriv * std::exp(j.log_scale), sph_bessel_deriv(BesselKind::J, n, z), 1e-12));
      CHECK(close_rel(h.value * std::exp(h.log_scale), sph_bessel(BesselKind::H1, n, z), 1e-12));
      CHECK(close_rel(h.deriv * std::exp(h.log_scale), sph_bessel_deriv(BesselKind::H1, n, z), 1e-12));
    }
  // far beyond the double range in plain form
  const auto big = specfun::sph_h_scaled(200, 1e-3);
  CHECK(std::isfinite(big.log_scale));
  CHECK(big.log_scale > 700.0);
}

TEST_CASE("domain and overflow errors") {
  CHECK_THROWS_AS(sph_bessel(BesselKind::J, -1, 1.0), DomainError);
  CHECK_THROWS_AS(sph_bessel(BesselKind::J, 1000, 1.0), DomainError);
  CHECK_THROWS_AS(sph_bessel(BesselKind::H1, 0, 0.0), DomainError);
  CHECK_THROWS_AS(sph_bessel(BesselKind::Y, 2, 0.0), DomainError);
  CHECK_THROWS_AS(sph_bessel(BesselKind::J, 0, Complex(NAN, 0.0)), DomainError);
  CHECK_THROWS_AS(sph_bessel(BesselKind::Y, 200, 1e-3), OverflowError);
}

TEST_CASE("Legendre polynomials") {
  CHECK(specfun::legendre_p(0, 0.37) == 1.0);
  CHECK(specfun::legendre_p(1, 0.3) == doctest::Approx(0.3));
  CHECK(specfun::legendre_p(2, 0.5) == doctest::Approx(-0.125));
  const auto t = specfun::legendre_table(40, 0.81);
  REQUIRE(t.size() == 41);
  for (int n = 0; n <= 40; ++n) CHECK(t[n] == doctest::Approx(specfun::legendre_p(n, 0.81)).epsilon(1e-13));
  for (int n = 0; n <= 40; ++n) CHECK(specfun::legendre_p(n, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(specfun::legendre_p(2, 1.5), DomainError);
  CHECK_THROWS_AS(specfun::legendre_p(-1, 0.5), DomainError);
}
