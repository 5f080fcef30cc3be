// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <functional>
#include <vector>

#include "hatsim/cloak.hpp"
#include "hatsim/specfun.hpp"

namespace hatsim::tuner {

struct Bracket {
  double lo = -500.0;
  double hi = 500.0;
  bool operator==(const Bracket&) const = default;
};

struct ScanOptions {
  double step = 0.25;
  double xtol = 1e-6;
  int workers = 1;
};

enum class ResonanceRule {
  OutgoingPole,  // real part of the zero of W[u_int, h0] in complex tau1
  Dirichlet,     // u(L) = 0
};

enum class Mode { Hat, Resonance, CloakLike };
const char* mode_name(Mode m);

struct ModeThresholds {
  double hat_tol = 1e-3;
  double amp_threshold = 1.0;
  bool operator==(const ModeThresholds&) const = default;
};

struct ModeReport {
  double tau1 = 0.0;
  Mode mode = Mode::CloakLike;
  double interior_amplitude = 0.0;
  double far_field_residual = 0.0;
  Complex c0;  // scattered s-wave coefficient
};

// Best-so-far iterates of a Brent refinement.
struct RootTrace {
  std::vector<double> iterates;
  std::vector<double> residuals;
};

// Normalized W[u_int, j0] at r = 2.
double sh_mismatch(double tau1, const HatConfig& config);
// Flux at r_cut of the solution shot inward from r = L with free j0 data, normalized.
double sh_mismatch_inward(double tau1, const HatConfig& config, double r_cut = 1e-3);
// Normalized u(L) of the regular solution.
double dirichlet_mismatch(double tau1, const HatConfig& config);
// Normalized W[u_int, h0] at r = 2 for complex tau1.
Complex outgoing_mismatch(Complex tau1, const HatConfig& config);
// Neumann condition u'(1) = 0 of the interior problem (rho -> 0 limit).
double limit_mismatch(double tau1, const HatConfig& config);

// Smallest sign change of f on the bracket grid, refined by Brent.
double find_smallest_root(const std::function<double(double)>& f, Bracket bracket, const ScanOptions& opts,
                          RootTrace* trace = nullptr);
double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb, double xtol,
             RootTrace* trace = nullptr);

double find_tau1_sh(const HatConfig& config, Bracket bracket = {}, const ScanOptions& opts = {},
                    RootTrace* trace = nullptr);
double find_tau1_resonance(const HatConfig& config, Bracket bracket = {}, const ScanOptions& opts = {},
                           ResonanceRule rule = ResonanceRule::OutgoingPole);
// Complex zero of outgoing_mismatch nearest the real seed.
Complex resonance_pole(const HatConfig& config, double seed);
double find_tau1_limit(const HatConfig& config, Bracket bracket = {}, const ScanOptions& opts = {});

ModeReport classify_mode(double tau1, const HatConfig& config, const ModeThresholds& th = {});

}  // namespace hatsim::tuner
