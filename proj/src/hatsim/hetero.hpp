// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hatsim/cloak.hpp"
#include "hatsim/radial.hpp"

namespace hatsim::hetero {

// Units: hbar^2 = 2, masses relative to m0.
struct Material {
  double m = 1.0;
  double V = 0.0;
  bool operator==(const Material&) const = default;
};

struct MaterialTable {
  std::array<Material, 4> entries{};
  double m0 = 1.0;
  // Throws ConfigError when masses are out of order or do not bracket m0.
  void validate() const;
  double v_min() const;
  double v_max() const;
  bool operator==(const MaterialTable&) const = default;
};

// Radial potential V(r) supported on [0, support) at design energy E.
struct HatPotential {
  std::function<double(double)> V;
  double support = 0.0;
  std::vector<double> breaks;
  double E = 0.0;
};

// Shell potential -E (eta - 1) of a hat configuration.
HatPotential hat_potential(const HatConfig& config);

// V(r) -> V(r / ell) / ell^2, E -> E / ell^2.
HatPotential scale_hat(const HatPotential& p, double ell);

struct ConstantLayer {
  double r_inner;
  double r_outer;
  double V;
};

// Each of N cells becomes a wall (+V_plus) or a well (-V_minus) followed by a V = 0 gap,
// with the duty cycle set by the cell average.
std::vector<ConstantLayer> quantize_two_level(const HatPotential& p, int cells, double v_plus, double v_minus,
                                              double quad_tol = 1e-10);

using Ratios = std::array<double, 4>;

// Minimum-norm solution of the mixing system; InfeasibleError unless consistent with every ratio in [0, 1].
Ratios layer_ratios(double m0, double v_target, const MaterialTable& materials);

struct Layer {
  int material;  // 1..4
  double r_inner;
  double r_outer;
};

struct LayerStack {
  std::vector<Layer> layers;
  int J = 0;
  double outer() const { return layers.empty() ? 0.0 : layers.back().r_outer; }
};

// 4J layers cycling materials 1,2,3,4; layer j has width ratio_i(R(j-1)) * radius / J.
// radius = 0.5 gives widths ratio / (2J). Zero-width layers are dropped.
LayerStack build_stack(const std::function<Ratios(double)>& ratios, int J, double radius = 0.5);

// Stack of the pipeline: ratios from layer_ratios(V(r)) over [0, p.support).
LayerStack design_stack(const HatPotential& p, const MaterialTable& materials, int J);

// s-wave profile: stack layers, then background (m0, V = 0) out to r_out.
RadialProfile bdd_profile(const LayerStack& stack, const MaterialTable& materials, double energy, double r_out);
radial::RadialSolution bdd_solve(const LayerStack& stack, const MaterialTable& materials, double energy,
                                 double r_out);
// u'(r_out) / u(r_out); ResonanceError near a Dirichlet eigenvalue.
Complex bdd_dtn(const LayerStack& stack, const MaterialTable& materials, double energy, double r_out);

// Same DtN for m = m0 and a smooth or layered potential.
Complex potential_dtn(const HatPotential& p, double m0, double energy, double r_out);
Complex layered_dtn(const std::vector<ConstantLayer>& layers, double m0, double energy, double r_out);

struct ThermalWindow {
  double mean;
  double variance;
};

// Gamma(3/2, k_B T) energies above the band edge.
ThermalWindow thermal_window(double e_c, double temperature, double k_b = 1.0);

}  // namespace hatsim::hetero
