// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "hatsim/cloak.hpp"
#include "hatsim/fields.hpp"

namespace hatsim::observables {

struct Interval {
  double r1 = 0.0;
  double r2 = 0.0;
  bool operator==(const Interval&) const = default;
};

// Integral of 4 pi r^2 |psi|^2 (angle-averaged) over the interval.
double region_mass(const fields::EffectiveField& field, Interval iv, double quad_tol = 1e-10);

enum class Drive {
  Auto,       // Eigen when j0(omega L) = 0, else Dirichlet with h0 = j0(omega L)
  Eigen,
  Dirichlet,
};

fields::HarmonicSolution s_wave(const HatConfig& config, Drive drive = Drive::Auto);
fields::EffectiveField s_wave_field(const HatConfig& config, Drive drive = Drive::Auto);

struct RegionSpec {
  std::string name;
  Interval interval;
};

struct RegionProb {
  std::string region;
  std::string ball;
  Interval interval;
  double mass = 0.0;
  double total = 0.0;
  double probability = 0.0;
};

// Region probabilities for both balls, then P(region | r > 2) for regions outside B_2.
std::vector<RegionProb> probabilities(const HatConfig& config_empty, const HatConfig& config_sh,
                                      const std::vector<RegionSpec>& regions, Drive drive = Drive::Auto);

double strength(const HatConfig& config);

struct GameSpec {
  int n_balls = 3;
  Interval region{3.0, 2.0 * std::numbers::pi};
  bool operator==(const GameSpec&) const = default;
};

struct MonteReport {
  double a_em = 0.0, c_em = 0.0, mu_em = 0.0;
  double a_sh = 0.0, c_sh = 0.0, mu_sh = 0.0;
  double p = 0.0;
  double bob_profit = 0.0;  // per round: p (mu_sh - mu_em)
};

MonteReport monte_game(const GameSpec& game, const HatConfig& config_empty, const HatConfig& config_sh,
                       Drive drive = Drive::Auto);

// Radial density with support [0, r_max]; breaks mark kinks or jumps.
struct RadialDensity {
  std::function<double(double)> f;
  double r_max = 1.0;
  std::vector<double> breaks;
};

RadialDensity uniform_ball(double delta, double mass = 1.0);
// Angle-averaged |psi|^2 normalized to unit mass on B_L.
RadialDensity field_density(const fields::EffectiveField& field, double quad_tol = 1e-10);

double coulomb_veff(const RadialDensity& density, double r, double quad_tol = 1e-11);

// Tabulated V_eff with exact slopes -M(r)/r^2; cubic Hermite in between.
class CoulombTable {
 public:
  explicit CoulombTable(const RadialDensity& density, int cells = 2000);
  double operator()(double r) const;
  double mass() const { return M_.back(); }
  // 1/2 int 4 pi r^2 rho V_eff
  double e1() const { return e1_; }

 private:
  std::vector<double> r_, M_, V_;
  double e1_ = 0.0;
};

double perturbation_e1(const RadialDensity& density, int cells = 2000);
double e1_no_sh(const HatConfig& config_empty, Drive drive = Drive::Auto);
double charge_qprime(const fields::EffectiveField& field, double quad_tol = 1e-10);

struct CoulombOptions {
  int table_cells = 4000;
  // eigenvalue search may not move further than this multiple of |2 a E1| (plus a floor)
  double neighborhood = 10.0;
};

struct CoulombResult {
  double a = 0.0;
  double E_eff = 0.0;
  double E1 = 0.0;
  fields::HarmonicSolution field;
};

// s-wave Dirichlet eigenproblem with theta-weighted a V_eff added; returns the eigenvalue nearest E.
CoulombResult solve_with_coulomb(const HatConfig& config, double a, const CoulombOptions& opts = {});

}  // namespace hatsim::observables
