// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <functional>
#include <numbers>
#include <vector>

namespace hatsim {

struct Shell {
  double radius;
  double tau;
  bool operator==(const Shell&) const = default;
};

// Coefficients used on the cloak layer (R, 2).
enum class CloakModel {
  Pushforward,  // sigma_r = 2(r-1)^2/r^2, sigma_t = 2, kappa = 8(r-1)^2/r^2
  Printed,      // sigma_r = 2(r-1)^2,     sigma_t = 2, kappa = 64(r-1)^4/r^4
};

// How a shell value tau_j enters the equation.
enum class ShellConvention {
  Additive,        // k^2 = E + tau_j, i.e. kappa_j = 1 + tau_j/E
  Multiplicative,  // kappa_j = tau_j
};

struct HatConfig {
  double rho = 0.01;
  double L = 2.0 * std::numbers::pi;
  std::vector<Shell> shells;
  double E = 4.0;
  int n_max = 30;
  double ode_tol = 1e-10;
  double quad_tol = 1e-10;
  bool cloak = true;
  CloakModel cloak_model = CloakModel::Pushforward;
  ShellConvention convention = ShellConvention::Additive;

  double R() const { return 1.0 + 0.5 * rho; }
  double R0() const { return shells.empty() ? 0.0 : shells.back().radius; }
  double omega() const;

  // Throws ConfigError.
  void validate() const;

  HatConfig with_tau1(double tau1) const;
  HatConfig with_rho(double rho) const;
  // Same L, E and tolerances; no cloak and no shells.
  HatConfig empty() const;

  bool operator==(const HatConfig&) const = default;
};

enum class RegionKind { Constant, CloakPushforward, CloakPrinted };

struct Region {
  double r_a = 0.0;
  double r_b = 0.0;
  RegionKind kind = RegionKind::Constant;
  // Constant regions only.
  double sigma = 1.0;
  double kappa = 1.0;
  double potential = 0.0;

  double sigma_r(double r) const;
  double sigma_t(double r) const;
  double kappa_at(double r) const;
  double potential_at(double) const { return kind == RegionKind::Constant ? potential : 0.0; }
};

// Piecewise coefficients of
//   -(1/r^2)(r^2 sigma_r u')' + [sigma_t n(n+1)/r^2 - omega^2 kappa + q + extra] u = 0
class RadialProfile {
 public:
  RadialProfile(std::vector<Region> regions, double omega2);

  const std::vector<Region>& regions() const { return regions_; }
  double omega2() const { return omega2_; }
  double outer_radius() const { return regions_.back().r_b; }
  std::vector<double> breakpoints() const;

  // Regions are half-open [r_a, r_b); the last one also contains its outer end.
  std::size_t index_of(double r) const;
  const Region& region_at(double r) const { return regions_[index_of(r)]; }

  double sigma_r(double r) const { return region_at(r).sigma_r(r); }
  double sigma_t(double r) const { return region_at(r).sigma_t(r); }
  double kappa(double r) const { return region_at(r).kappa_at(r); }
  double potential(double r) const;

  void set_extra_potential(std::function<double(double)> extra) { extra_ = std::move(extra); }
  bool has_extra_potential() const { return static_cast<bool>(extra_); }
  double extra_potential(double r) const { return extra_ ? extra_(r) : 0.0; }

 private:
  std::vector<Region> regions_;
  double omega2_;
  std::function<double(double)> extra_;
};

RadialProfile material_profile(const HatConfig& config);
// Shells plus free space up to `outer` (the interior problem on B_outer, no cloak).
RadialProfile interior_profile(const HatConfig& config, double outer = 1.0);

// Shell value eta(r) (kappa of the shell containing r); 1 outside [0, R0).
double eta(double r, const HatConfig& config);
double cloaked_potential_q(double r, const HatConfig& config);

// |x| = 1 + |y|/2 on (rho, 2], identity beyond.
double blowup_map(double y_radius, double rho);
double inverse_blowup(double x_radius, double rho);

double theta_tilde(double r);
double theta_virtual(double y_radius);

// Weight of |u|^2 in probability masses at finite rho: theta_tilde on the cloak layer.
double cloak_weight(double r, const HatConfig& config);

// Layered two-material density on (R, 2) with period epsilon.
class IsotropicDensity {
 public:
  static constexpr double kTransitionWidth = 0.02;
  static constexpr double kBumpHalfWidth = 0.01;

  IsotropicDensity(double rho, double epsilon);

  double inverse_mass(double r) const;
  double mass(double r) const { return 1.0 / inverse_mass(r); }
  // a(r) <p1> + b(r) <p2> + <p3>
  double cell_theta(double r) const;
  double epsilon() const { return epsilon_; }
  double R() const { return R_; }

  static double p1(double t);
  static double p2(double t);
  static double p3(double t);
  // Integral over one period of p1, p2, p3.
  static double mean(int which);
  static double a(double r);
  static double b(double r);

 private:
  double R_;
  double epsilon_;
};

double isotropic_density(double r, double rho, double epsilon);

}  // namespace hatsim
