// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "hatsim/cloak.hpp"
#include "hatsim/radial.hpp"

namespace hatsim::fields {

using Point = std::array<double, 3>;

// Weights (alpha, beta) of one region in its own {j_n, h_n} basis (power basis when k = 0).
struct RegionWeights {
  double r_a = 0.0;
  double r_b = 0.0;
  Complex alpha;
  Complex beta;
};

enum class Normalization { Dirichlet, Eigen, PlaneWave, Unit };
const char* normalization_name(Normalization n);

struct HarmonicSolution {
  int n = 0;
  // Solution in physical radius over [0, L], already scaled to the imposed data.
  radial::RadialSolution radial;
  // Legendre-channel factor; the field is weight * u(r) * P_n(cos theta).
  Complex weight = 1.0;
  // Exterior representation u = b j_n(omega r) + c h_n(omega r) on [2, L] (before weight).
  Complex b;
  Complex c;
  std::vector<RegionWeights> regions;
  Normalization normalization = Normalization::Unit;

  Complex u(double r) const { return weight * radial.u(r); }
  // Largest |u| on [0, r_max] sampled at `samples` points.
  double max_abs(double r_max, int samples = 400) const;
};

// s-wave solution with u(L) = h0.
HarmonicSolution solve_dirichlet_radial(const HatConfig& config, Complex h0);
// s-wave solution whose exterior part has unit j0 coefficient: u'(L) = omega j0'(omega L).
HarmonicSolution solve_eigen_radial(const HatConfig& config);
// Interior-regular solution for a unit incident channel b = 1 (exterior j_n + c_n h_n).
HarmonicSolution solve_unit_channel(const HatConfig& config, int n);

struct PlaneWaveSolution {
  Point direction{0.0, 0.0, 1.0};
  std::vector<HarmonicSolution> harmonics;
  bool truncation_warning = false;
  // sqrt(sum (2n+1)|c_n h_n(wL)|^2 / sum (2n+1)|j_n(wL)|^2)
  double far_field_residual = 0.0;
};

PlaneWaveSolution solve_plane_wave(const HatConfig& config, const Point& direction, int workers = 1);

// Scattered coefficient c_n for a unit incident channel.
Complex scattering_coefficient(const HatConfig& config, int n);

struct PhiMode {
  radial::RadialSolution phi;  // on [0, 1], unit L2(B_1) norm
  double phi_at_1 = 0.0;
  double dphi_at_1 = 0.0;
  double norm = 0.0;  // L2 norm of the raw regular solution (u(0) = 1)

  double operator()(double r) const;
};

PhiMode compute_phi(const HatConfig& config);

// Piecewise field assembled from harmonic solutions.
class EffectiveField {
 public:
  // Finite-rho field: u on [0, R] and [2, L], sqrt(theta_tilde) u on the cloak layer.
  static EffectiveField finite(const HatConfig& config, std::vector<HarmonicSolution> solutions,
                               Point direction = {0.0, 0.0, 1.0});
  // rho -> 0 limit: sqrt(theta_tilde) u_empty(F^-1(r)) for r > 1, beta u(0) Phi(r) inside.
  static EffectiveField limit(const HatConfig& config, std::vector<HarmonicSolution> empty_solutions,
                              PhiMode phi, Point direction = {0.0, 0.0, 1.0});

  // Radial part of harmonic k (weight included); `weighted` applies sqrt(theta_tilde).
  Complex radial(std::size_t k, double r, bool weighted = true) const;
  // Angular integral of |psi|^2 over the unit sphere at radius r.
  double sphere_density(double r) const;
  Complex operator()(const Point& x) const;
  std::vector<Complex> evaluate(const std::vector<Point>& pts, int workers = 1) const;

  double outer_radius() const { return config_.L; }
  std::vector<double> breakpoints() const;
  const HatConfig& config() const { return config_; }
  bool is_limit() const { return limit_; }
  const std::vector<HarmonicSolution>& solutions() const { return solutions_; }
  Complex beta() const { return beta_; }
  Complex u0() const { return u0_; }

 private:
  HatConfig config_;
  std::vector<HarmonicSolution> solutions_;
  Point direction_{0.0, 0.0, 1.0};
  bool limit_ = false;
  std::shared_ptr<PhiMode> phi_;
  Complex beta_ = 0.0;
  Complex u0_ = 0.0;
};

std::vector<Complex> effective_field(const std::vector<HarmonicSolution>& solutions, const HatConfig& config,
                                     const std::vector<Point>& points, int workers = 1);

}  // namespace hatsim::fields
