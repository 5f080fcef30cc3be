// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include <cmath>

#include "doctest.h"
#include "hatsim/cloak.hpp"
#include "hatsim/errors.hpp"
#include "hatsim/tuner.hpp"

using namespace hatsim;
using namespace hatsim::tuner;

namespace {

HatConfig eigen(double tau2) {
  HatConfig c;
  c.shells = {{0.6, 0.0}, {0.8, tau2}};
  return c;
}

}  // namespace

TEST_CASE("trivial interior has zero mismatch") {
  HatConfig c = eigen(1.0);
  c.cloak = false;
  c.convention = ShellConvention::Multiplicative;
  CHECK(std::abs(sh_mismatch(1.0, c)) < 1e-12);
  CHECK(std::abs(sh_mismatch(2.0, c)) > 1e-3);
}

TEST_CASE("mismatch changes sign around the eigen-config root and is continuous") {
  const HatConfig c = eigen(-50.0);
  CHECK((sh_mismatch(12.8, c) > 0) != (sh_mismatch(13.0, c) > 0));
  // no jumps: second differences on a fine grid stay small, away from the
  // interior resonance just above the root (12.905 .. 12.92)
  for (auto [lo, hi] : {std::pair{11.0, 12.89}, std::pair{12.94, 15.0}}) {
    const double h = 0.001;
    const int steps = static_cast<int>(std::lround((hi - lo) / h));
    double w0 = sh_mismatch(lo, c), w1 = sh_mismatch(lo + h, c), worst = 0.0;
    for (int i = 2; i <= steps; ++i) {
      const double w2 = sh_mismatch(lo + i * h, c);
      worst = std::max(worst, std::abs(w2 - 2.0 * w1 + w0));
      w0 = w1;
      w1 = w2;
    }
    CAPTURE(lo);
    CHECK(worst < 2e-4);
  }
}

TEST_CASE("Schroedinger-hat roots") {
  CHECK(find_tau1_sh(eigen(-50.0)) == doctest::Approx(12.9016).epsilon(0.05 / 12.9016));
  CHECK(find_tau1_sh(eigen(-25.0)) == doctest::Approx(7.0675).epsilon(0.05 / 7.0675));
  HatConfig hi;
  hi.L = 3.0;
  hi.E = 256.0;
  hi.n_max = 70;
  hi.shells = {{0.25, 0.0}, {0.5, -10.0}};
  CHECK(std::abs(find_tau1_sh(hi, {-500.0, 500.0}) + 169.49) < 1.0);
}

TEST_CASE("at the root the exterior wave is the free s-wave") {
  const HatConfig c = eigen(-50.0);
  const double tau = find_tau1_sh(c, {}, {0.25, 1e-10});
  const ModeReport r = classify_mode(tau, c);
  CHECK(r.far_field_residual < 1e-6);
  CHECK(std::abs(r.c0) < 1e-6);
}

TEST_CASE("inward shooting with a small-r cutoff agrees on the root") {
  const HatConfig c = eigen(-50.0);
  const double tau = find_tau1_sh(c);
  auto f = [&](double t) { return sh_mismatch_inward(t, c); };
  const double inward = brent(f, tau - 0.2, tau + 0.2, f(tau - 0.2), f(tau + 0.2), 1e-8);
  CHECK(inward == doctest::Approx(tau).epsilon(1e-4));
}

TEST_CASE("root search is deterministic") {
  const HatConfig c = eigen(-50.0);
  const double a = find_tau1_sh(c);
  const double b = find_tau1_sh(c);
  ScanOptions par;
  par.workers = 4;
  const double d = find_tau1_sh(c, {}, par);
  CHECK(a == b);
  CHECK(a == d);
}

TEST_CASE("Brent history improves monotonically") {
  RootTrace trace;
  find_tau1_sh(eigen(-50.0), {}, {}, &trace);
  REQUIRE(trace.residuals.size() >= 3);
  for (std::size_t i = 1; i < trace.residuals.size(); ++i) CHECK(trace.residuals[i] < trace.residuals[i - 1]);
  CHECK(trace.residuals.back() < 1e-6);
}

TEST_CASE("no root in the bracket") {
  CHECK_THROWS_AS(find_tau1_sh(eigen(-50.0), {20.0, 21.0}), NoRootError);
  CHECK_THROWS_AS(find_tau1_sh(eigen(-50.0), {21.0, 20.0}), ConfigError);
  CHECK_THROWS_AS(find_tau1_sh(eigen(-50.0), {}, {0.0}), ConfigError);
  CHECK_THROWS_AS(find_tau1_sh(eigen(-50.0).empty()), ConfigError);
}

TEST_CASE("resonance root") {
  const HatConfig c = eigen(-25.0);
  CHECK(find_tau1_resonance(c) == doctest::Approx(7.120).epsilon(0.05 / 7.12));
  // u(L) = 0 coincides with the hat root when j0(omega L) = 0
  const double dir = find_tau1_resonance(c, {}, {}, ResonanceRule::Dirichlet);
  CHECK(dir == doctest::Approx(find_tau1_sh(c)).epsilon(1e-5));
}

TEST_CASE("resonance and hat roots close in as rho shrinks") {
  double last = 1e9;
  for (double rho : {0.04, 0.02, 0.01}) {
    const HatConfig c = eigen(-25.0).with_rho(rho);
    const double gap = std::abs(find_tau1_resonance(c) - find_tau1_sh(c));
    CAPTURE(rho);
    CHECK(gap < last);
    last = gap;
  }
}

TEST_CASE("mode labels") {
  const HatConfig c = eigen(-25.0);
  CHECK(classify_mode(7.0675, c).mode == Mode::Hat);
  CHECK(classify_mode(8.2531, c).mode == Mode::CloakLike);
  CHECK(classify_mode(7.120, c).mode == Mode::Resonance);
  for (double t : {5.0, 7.0675, 7.12, 9.0}) {
    const ModeReport r = classify_mode(t, c);
    CHECK(r.interior_amplitude >= 0.0);
    CHECK(r.far_field_residual >= 0.0);
    CHECK(r.tau1 == t);
  }
  ModeThresholds strict;
  strict.amp_threshold = 1e3;
  CHECK(classify_mode(7.0675, c, strict).mode == Mode::CloakLike);
  CHECK(std::string(mode_name(Mode::Hat)) == "hat");
  CHECK(std::string(mode_name(Mode::CloakLike)) == "cloak-like");
  CHECK(std::string(mode_name(Mode::Resonance)) == "resonance");
}
