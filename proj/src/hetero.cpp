// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/hetero.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "hatsim/errors.hpp"
#include "hatsim/quadrature.hpp"

namespace hatsim::hetero {

namespace {

constexpr double kRatioSlack = 1e-12;

Region constant_region(double a, double b, double m, double V) {
  Region g;
  g.r_a = a;
  g.r_b = b;
  g.sigma = 1.0 / m;
  g.kappa = 1.0;
  g.potential = V;
  return g;
}

Complex dtn_of(const RadialProfile& p, double r_out) {
  const radial::State s = radial::regular_state_at(p, 0, r_out);
  const double sigma = p.sigma_r(r_out);
  const double unit = std::max(std::sqrt(std::abs(p.omega2())), 1.0) * r_out * r_out * sigma;
  if (std::abs(s.u) <= 1e-10 * std::hypot(std::abs(s.u), std::abs(s.flux) / unit))
    throw ResonanceError("energy is at a Dirichlet eigenvalue of the layered ball");
  return s.flux / (sigma * r_out * r_out * s.u);
}

// Background region out to r_out, when there is room.
void close_profile(std::vector<Region>& regions, double m0, double r_out) {
  const double end = regions.empty() ? 0.0 : regions.back().r_b;
  if (r_out < end * (1.0 - 1e-14)) throw DomainError("r_out lies inside the structure");
  if (r_out > end) regions.push_back(constant_region(end, r_out, m0, 0.0));
}

}  // namespace

void MaterialTable::validate() const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(entries[i].m > 0.0)) throw ConfigError("material masses must be positive");
    if (i > 0 && entries[i].m < entries[i - 1].m) throw ConfigError("material masses must be ordered m1 <= ... <= m4");
  }
  if (!(m0 > 0.0) || m0 < entries[0].m || m0 > entries[3].m) throw ConfigError("m0 must lie in [m1, m4]");
}

double MaterialTable::v_min() const {
  return std::min({entries[0].V, entries[1].V, entries[2].V, entries[3].V});
}

double MaterialTable::v_max() const {
  return std::max({entries[0].V, entries[1].V, entries[2].V, entries[3].V});
}

HatPotential hat_potential(const HatConfig& c) {
  c.validate();
  HatPotential p;
  p.V = [c](double r) { return cloaked_potential_q(r, c); };
  p.support = c.R0();
  for (const Shell& s : c.shells) p.breaks.push_back(s.radius);
  p.E = c.E;
  return p;
}

HatPotential scale_hat(const HatPotential& p, double ell) {
  if (!(ell > 0.0)) throw DomainError("scale must be positive");
  if (ell == 1.0) return p;
  HatPotential q;
  const auto V = p.V;
  const double s2 = 1.0 / (ell * ell);
  q.V = [V, ell, s2](double r) { return s2 * V(r / ell); };
  q.support = p.support * ell;
  for (double b : p.breaks) q.breaks.push_back(b * ell);
  q.E = p.E * s2;
  return q;
}

std::vector<ConstantLayer> quantize_two_level(const HatPotential& p, int cells, double v_plus, double v_minus,
                                              double quad_tol) {
  if (cells < 1) throw ConfigError("need at least one cell");
  if (!(v_plus > 0.0) || !(v_minus > 0.0)) throw ConfigError("V_plus and V_minus must be positive");
  std::vector<ConstantLayer> out;
  const double h = p.support / cells;
  for (int c = 0; c < cells; ++c) {
    const double a = c * h, b = (c + 1 == cells) ? p.support : (c + 1) * h;
    for (int k = 0; k <= 16; ++k) {
      const double v = p.V(std::min(a + (b - a) * k / 16.0, std::nextafter(b, a)));
      if (v > v_plus || -v > v_minus) throw ConfigError("V_plus / V_minus do not cover the potential");
    }
    const double mean = integrate(p.V, a, b, quad_tol, p.breaks) / (b - a);
    const double level = mean >= 0.0 ? v_plus : -v_minus;
    const double duty = mean / level;
    const double mid = a + duty * (b - a);
    if (mid > a) out.push_back({a, mid, level});
    if (b > mid) out.push_back({mid, b, 0.0});
  }
  return out;
}

Ratios layer_ratios(double m0, double v_target, const MaterialTable& t) {
  t.validate();
  if (v_target > t.v_max() || v_target < t.v_min())
    throw InfeasibleError("target potential lies outside the material band edges");
  Eigen::Matrix4d A;
  Eigen::Vector4d rhs(1.0, m0, 1.0 / m0, v_target);
  for (int i = 0; i < 4; ++i) {
    const Material& e = t.entries[static_cast<std::size_t>(i)];
    A(0, i) = 1.0;
    A(1, i) = e.m;
    A(2, i) = 1.0 / e.m;
    A(3, i) = e.V;
  }
  const Eigen::Vector4d x = A.completeOrthogonalDecomposition().solve(rhs);
  const double resid = (A * x - rhs).norm();
  if (resid > 1e-10 * std::max(1.0, rhs.norm())) throw InfeasibleError("mixing system is inconsistent");
  Ratios r{};
  for (int i = 0; i < 4; ++i) {
    double v = x(i);
    if (v < -kRatioSlack || v > 1.0 + kRatioSlack)
      throw InfeasibleError("ratio l" + std::to_string(i + 1) + " = " + std::to_string(v) + " outside [0, 1]");
    // roundoff-level weights would leave slivers in the stack
    r[static_cast<std::size_t>(i)] = std::abs(v) <= kRatioSlack ? 0.0 : std::clamp(v, 0.0, 1.0);
  }
  return r;
}

LayerStack build_stack(const std::function<Ratios(double)>& ratios, int J, double radius) {
  if (J < 1) throw ConfigError("J must be at least 1");
  if (!(radius > 0.0)) throw ConfigError("stack radius must be positive");
  LayerStack s;
  s.J = J;
  double R = 0.0;
  for (int j = 1; j <= 4 * J; ++j) {
    const int i = (j - 1) % 4 + 1;
    const double w = ratios(R)[static_cast<std::size_t>(i - 1)] * radius / J;
    if (w <= 0.0) continue;
    const double next = R + w;
    if (next > R) s.layers.push_back({i, R, next});
    R = next;
  }
  return s;
}

LayerStack design_stack(const HatPotential& p, const MaterialTable& materials, int J) {
  const double m0 = materials.m0;
  return build_stack([&](double r) { return layer_ratios(m0, r < p.support ? p.V(r) : 0.0, materials); }, J,
                     p.support);
}

RadialProfile bdd_profile(const LayerStack& stack, const MaterialTable& t, double energy, double r_out) {
  t.validate();
  std::vector<Region> regions;
  for (const Layer& l : stack.layers) {
    const Material& e = t.entries[static_cast<std::size_t>(l.material - 1)];
    const double a = regions.empty() ? 0.0 : regions.back().r_b;
    regions.push_back(constant_region(a, l.r_outer, e.m, e.V));
  }
  close_profile(regions, t.m0, r_out);
  return RadialProfile(std::move(regions), energy);
}

radial::RadialSolution bdd_solve(const LayerStack& stack, const MaterialTable& t, double energy, double r_out) {
  auto p = std::make_shared<const RadialProfile>(bdd_profile(stack, t, energy, r_out));
  return radial::solve_regular(p, 0);
}

Complex bdd_dtn(const LayerStack& stack, const MaterialTable& t, double energy, double r_out) {
  return dtn_of(bdd_profile(stack, t, energy, r_out), r_out);
}

Complex potential_dtn(const HatPotential& p, double m0, double energy, double r_out) {
  std::vector<double> cuts{0.0};
  for (double b : p.breaks)
    if (b > 0.0 && b < p.support) cuts.push_back(b);
  cuts.push_back(p.support);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Region> regions;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) regions.push_back(constant_region(cuts[i], cuts[i + 1], m0, 0.0));
  close_profile(regions, m0, r_out);
  RadialProfile prof(std::move(regions), energy);
  const auto V = p.V;
  const double support = p.support;
  prof.set_extra_potential([V, support](double r) { return r < support ? V(r) : 0.0; });
  return dtn_of(prof, r_out);
}

Complex layered_dtn(const std::vector<ConstantLayer>& layers, double m0, double energy, double r_out) {
  std::vector<Region> regions;
  for (const ConstantLayer& l : layers) {
    const double a = regions.empty() ? 0.0 : regions.back().r_b;
    regions.push_back(constant_region(a, l.r_outer, m0, l.V));
  }
  close_profile(regions, m0, r_out);
  return dtn_of(RadialProfile(std::move(regions), energy), r_out);
}

ThermalWindow thermal_window(double e_c, double temperature, double k_b) {
  if (temperature < 0.0) throw DomainError("temperature must be non-negative");
  const double kt = k_b * temperature;
  return {e_c + 1.5 * kt, 1.5 * kt * kt};
}

}  // namespace hatsim::hetero
