// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/cloak.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hatsim/errors.hpp"

namespace hatsim {

double HatConfig::omega() const { return std::sqrt(E); }

void HatConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(E > 0.0) || !std::isfinite(E)) fail("E must be positive");
  if (!(L > 2.0) || !std::isfinite(L)) fail("L must exceed 2");
  if (n_max < 0) fail("n_max must be non-negative");
  if (!(ode_tol > 0.0 && ode_tol < 1.0)) fail("ode_tol must lie in (0, 1)");
  if (!(quad_tol > 0.0 && quad_tol < 1.0)) fail("quad_tol must lie in (0, 1)");
  double prev = 0.0;
  for (const Shell& s : shells) {
    if (!std::isfinite(s.tau)) fail("shell value must be finite");
    if (!(s.radius > prev)) fail("shell radii must be positive and strictly increasing");
    prev = s.radius;
  }
  if (cloak) {
    if (!(rho > 0.0) || !(rho < 2.0)) fail("rho must lie in (0, 2)");
    if (!(R0() < 1.0)) fail("outer shell radius R0 must be below 1");
  } else if (!(R0() < L)) {
    fail("outer shell radius must be below L");
  }
}

HatConfig HatConfig::with_tau1(double tau1) const {
  HatConfig c = *this;
  if (c.shells.empty()) throw ConfigError("configuration has no shells");
  c.shells.front().tau = tau1;
  return c;
}

HatConfig HatConfig::with_rho(double r) const {
  HatConfig c = *this;
  c.rho = r;
  return c;
}

HatConfig HatConfig::empty() const {
  HatConfig c = *this;
  c.cloak = false;
  c.shells.clear();
  return c;
}

double Region::sigma_r(double r) const {
  switch (kind) {
    case RegionKind::Constant: return sigma;
    case RegionKind::CloakPushforward: return 2.0 * (r - 1.0) * (r - 1.0) / (r * r);
    case RegionKind::CloakPrinted: return 2.0 * (r - 1.0) * (r - 1.0);
  }
  return sigma;
}

double Region::sigma_t(double) const { return kind == RegionKind::Constant ? sigma : 2.0; }

double Region::kappa_at(double r) const {
  switch (kind) {
    case RegionKind::Constant: return kappa;
    case RegionKind::CloakPushforward: return 8.0 * (r - 1.0) * (r - 1.0) / (r * r);
    case RegionKind::CloakPrinted: {
      double q = (r - 1.0) / r;
      return 64.0 * q * q * q * q;
    }
  }
  return kappa;
}

RadialProfile::RadialProfile(std::vector<Region> regions, double omega2)
    : regions_(std::move(regions)), omega2_(omega2) {
  if (regions_.empty()) throw ConfigError("profile needs at least one region");
  if (regions_.front().r_a != 0.0) throw ConfigError("profile must start at r = 0");
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const Region& g = regions_[i];
    if (!(g.r_b > g.r_a)) throw ConfigError("profile regions must have positive width");
    if (i > 0 && g.r_a != regions_[i - 1].r_b) throw ConfigError("profile regions must tile");
    if (g.kind == RegionKind::Constant && !(g.sigma > 0.0))
      throw ConfigError("sigma must be positive");
  }
}

std::vector<double> RadialProfile::breakpoints() const {
  std::vector<double> b;
  b.reserve(regions_.size() + 1);
  b.push_back(0.0);
  for (const Region& g : regions_) b.push_back(g.r_b);
  return b;
}

std::size_t RadialProfile::index_of(double r) const {
  if (r < 0.0 || r > outer_radius()) {
    std::ostringstream os;
    os << "radius " << r << " outside profile [0, " << outer_radius() << "]";
    throw DomainError(os.str());
  }
  auto it = std::upper_bound(regions_.begin(), regions_.end(), r,
                             [](double x, const Region& g) { return x < g.r_b; });
  if (it == regions_.end()) return regions_.size() - 1;
  return static_cast<std::size_t>(it - regions_.begin());
}

double RadialProfile::potential(double r) const {
  return region_at(r).potential_at(r) + extra_potential(r);
}

namespace {

double shell_kappa(const Shell& s, const HatConfig& c) {
  return c.convention == ShellConvention::Additive ? 1.0 + s.tau / c.E : s.tau;
}

}  // namespace

RadialProfile material_profile(const HatConfig& c) {
  c.validate();
  std::vector<Region> regs;
  double r = 0.0;
  for (const Shell& s : c.shells) {
    Region g;
    g.r_a = r;
    g.r_b = s.radius;
    g.kappa = shell_kappa(s, c);
    regs.push_back(g);
    r = s.radius;
  }
  auto free_region = [](double a, double b) {
    Region g;
    g.r_a = a;
    g.r_b = b;
    return g;
  };
  if (c.cloak) {
    regs.push_back(free_region(r, c.R()));
    Region layer;
    layer.r_a = c.R();
    layer.r_b = 2.0;
    layer.kind = c.cloak_model == CloakModel::Pushforward ? RegionKind::CloakPushforward
                                                          : RegionKind::CloakPrinted;
    regs.push_back(layer);
    regs.push_back(free_region(2.0, c.L));
  } else {
    regs.push_back(free_region(r, c.L));
  }
  return RadialProfile(std::move(regs), c.E);
}

RadialProfile interior_profile(const HatConfig& c, double outer) {
  if (!(outer > c.R0())) throw ConfigError("interior radius must exceed R0");
  std::vector<Region> regs;
  double r = 0.0;
  for (const Shell& s : c.shells) {
    Region g;
    g.r_a = r;
    g.r_b = s.radius;
    g.kappa = shell_kappa(s, c);
    regs.push_back(g);
    r = s.radius;
  }
  Region g;
  g.r_a = r;
  g.r_b = outer;
  regs.push_back(g);
  return RadialProfile(std::move(regs), c.E);
}

double eta(double r, const HatConfig& c) {
  for (const Shell& s : c.shells)
    if (r < s.radius) return shell_kappa(s, c);
  return 1.0;
}

double cloaked_potential_q(double r, const HatConfig& c) {
  if (r < 0.0) throw DomainError("negative radius");
  if (r >= c.R0()) return 0.0;
  return -c.E * (eta(r, c) - 1.0);
}

double blowup_map(double y, double rho) {
  if (!(y > rho) || !std::isfinite(y)) throw DomainError("blow-up map needs |y| > rho");
  return y > 2.0 ? y : 1.0 + 0.5 * y;
}

double inverse_blowup(double x, double rho) {
  const double R = 1.0 + 0.5 * rho;
  if (!(x >= R) || !std::isfinite(x)) throw DomainError("inverse blow-up needs |x| >= R");
  return x > 2.0 ? x : 2.0 * (x - 1.0);
}

double theta_tilde(double r) { return (r > 1.0 && r < 2.0) ? 2.0 : 1.0; }

double theta_virtual(double y) {
  if (!(y > 0.0) || y > 2.0) throw DomainError("theta_virtual needs 0 < |y| <= 2");
  // F maps (0, 2] onto (1, 2]; the layer value holds up to the outer interface
  const double q = (1.0 + 0.5 * y) / y;
  return 2.0 * 0.5 * q * q;
}

double cloak_weight(double r, const HatConfig& c) {
  return (c.cloak && r > c.R() && r < 2.0) ? theta_tilde(r) : 1.0;
}

namespace {

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * (3.0 - 2.0 * x);
}

double frac(double t) { return t - std::floor(t); }

double split(double t) {
  constexpr double w = IsotropicDensity::kTransitionWidth;
  return smoothstep((frac(t) - 0.5 + 0.5 * w) / w);
}

}  // namespace

IsotropicDensity::IsotropicDensity(double rho, double epsilon) : R_(1.0 + 0.5 * rho), epsilon_(epsilon) {
  if (!(rho > 0.0 && rho < 2.0)) throw ConfigError("rho must lie in (0, 2)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  const double cells = (2.0 - R_) / epsilon;
  if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells))
    throw ConfigError("(2 - R)/epsilon must be an integer");
}

double IsotropicDensity::p3(double t) {
  t = frac(t);
  const double d = std::min(t, 1.0 - t);
  return 1.0 - smoothstep((d - kBumpHalfWidth) / kTransitionWidth);
}

double IsotropicDensity::p1(double t) { return (1.0 - p3(t)) * (1.0 - split(t)); }
double IsotropicDensity::p2(double t) { return (1.0 - p3(t)) * split(t); }

double IsotropicDensity::mean(int which) {
  // p1 and p2 are mirror images about t = 1/2 and p1 + p2 + p3 = 1.
  const double m3 = 2.0 * kBumpHalfWidth + kTransitionWidth;
  if (which == 3) return m3;
  if (which == 1 || which == 2) return 0.5 * (1.0 - m3);
  throw DomainError("profile index must be 1, 2 or 3");
}

double IsotropicDensity::a(double r) { return 2.0 * (1.0 + std::sqrt(std::max(0.0, 2.0 - r))); }
double IsotropicDensity::b(double r) { return 2.0 * (1.0 - std::sqrt(std::max(0.0, 2.0 - r))); }

double IsotropicDensity::inverse_mass(double r) const {
  if (!(r > R_ && r < 2.0)) return 1.0;
  const double t = (r - R_) / epsilon_;
  return a(r) * p1(t) + b(r) * p2(t) + p3(t);
}

double IsotropicDensity::cell_theta(double r) const {
  if (!(r > R_ && r < 2.0)) return 1.0;
  return a(r) * mean(1) + b(r) * mean(2) + mean(3);
}

double isotropic_density(double r, double rho, double epsilon) {
  return IsotropicDensity(rho, epsilon).mass(r);
}

}  // namespace hatsim
