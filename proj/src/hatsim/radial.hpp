// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "hatsim/cloak.hpp"
#include "hatsim/specfun.hpp"

namespace hatsim::radial {

// u and du/dr at a radius; true values are (u, du_dr) * exp(log_scale).
// du_dr is taken with sigma_r of the region containing `radius`.
struct CauchyData {
  double radius = 0.0;
  Complex u;
  Complex du_dr;
  double log_scale = 0.0;
};

// Propagation variable: flux = sigma_r r^2 u' is continuous across interfaces.
struct State {
  double r = 0.0;
  Complex u;
  Complex flux;
  double log_scale = 0.0;

  void renormalize();
  // log of max(|u|, |flux|) including the exponent
  double log_magnitude() const;
  Complex u_value() const;
  Complex flux_value() const;
};

State to_state(const RadialProfile& p, const CauchyData& c);
CauchyData to_cauchy(const RadialProfile& p, const State& s);

struct OdeOptions {
  double rtol = 1e-10;
  double min_step = 1e-13;
  long max_steps = 5'000'000;
  double r_min = 1e-6;
};

enum class Engine { Auto, Direct };

struct TransferMatrix {
  std::array<Complex, 4> m{1.0, 0.0, 0.0, 1.0};  // row-major on (u, flux)
  double log_scale = 0.0;

  State apply(const State& s, double r_to) const;
};

struct Sample {
  double r;
  Complex u;
  Complex flux;
  double log_scale;
};

// A solution of one harmonic over [r_lo, r_hi]: closed form inside Bessel-solvable
// regions, Hermite interpolation of integrator samples elsewhere.
class RadialSolution {
 public:
  RadialSolution() = default;
  RadialSolution(std::shared_ptr<const RadialProfile> profile, int n, OdeOptions opts);

  int n() const { return n_; }
  const RadialProfile& profile() const { return *profile_; }
  const std::vector<Sample>& samples() const { return samples_; }
  double r_lo() const { return samples_.front().r; }
  double r_hi() const { return samples_.back().r; }

  State at(double r) const;
  Complex u(double r) const { return at(r).u_value(); }
  Complex du_dr(double r) const;

  // Multiply the whole solution by factor * exp(log_factor).
  void scale(Complex factor, double log_factor = 0.0);

  // Internal construction.
  void push(const Sample& s) { samples_.push_back(s); }
  void mark_direct(std::size_t region) { direct_.push_back(region); }
  void set_regular_origin(bool v) { regular_origin_ = v; }

 private:
  bool region_direct(std::size_t region) const;
  State hermite(std::size_t i, double r) const;

  std::shared_ptr<const RadialProfile> profile_;
  int n_ = 0;
  OdeOptions opts_;
  std::vector<Sample> samples_;
  std::vector<std::size_t> direct_;
  bool regular_origin_ = false;
  Complex amp_ = 1.0;
  double amp_log_ = 0.0;
};

// True if the region admits the Bessel closed form (no extra potential, not the printed layer).
bool closed_form(const RadialProfile& p, const Region& g);

// Local wavenumber of a constant region: k^2 = (omega^2 kappa - q) / sigma.
Complex local_k(const RadialProfile& p, const Region& g);

// j_n-type and h_n-type solutions of a closed-form region at r (power basis when k = 0), as
// scaled states, plus the unscaled Wronskian f.u g.flux - f.flux g.u.
struct BasisPair {
  State f;
  State g;
  Complex det;
};
BasisPair region_basis(const RadialProfile& p, const Region& g, int n, double r);

// Regular solution j_n(k r) of a constant region (r^n when k = 0), as a state.
State regular_state(int n, Complex k, double sigma, double r);
// Regular solution in the innermost region at radius r (r > 0).
State regular_start(const RadialProfile& p, int n, double r);

RadialSolution integrate(const RadialProfile& p, int n, const CauchyData& from, double to_radius,
                         const OdeOptions& opts = {});
State integrate_state(const RadialProfile& p, int n, const State& from, double to_radius,
                      const OdeOptions& opts = {}, std::vector<Sample>* samples = nullptr);

TransferMatrix transfer_matrix(const RadialProfile& p, int n, double r_a, double r_b,
                               const OdeOptions& opts = {});

State propagate_state(const RadialProfile& p, int n, const State& from, double to_radius,
                      Engine engine = Engine::Auto, const OdeOptions& opts = {});
CauchyData propagate(const RadialProfile& p, int n, const CauchyData& from, double to_radius,
                     Engine engine = Engine::Auto, const OdeOptions& opts = {});

// Regular-at-origin solution on [0, r_to] (whole profile by default), unnormalized.
RadialSolution solve_regular(std::shared_ptr<const RadialProfile> p, int n, Engine engine = Engine::Auto,
                             const OdeOptions& opts = {}, double r_to = -1.0);

// State of the regular solution at r_to without keeping samples.
State regular_state_at(const RadialProfile& p, int n, double r_to, Engine engine = Engine::Auto,
                       const OdeOptions& opts = {});

// u'(L)/u(L) for the regular solution.
Complex dtn_harmonic(const HatConfig& config, int n);

// W[a, b] = a.u b.flux - a.flux b.u, normalized by |a| |b|.
double normalized_wronskian_abs(const State& a, const State& b);
Complex normalized_wronskian(const State& a, const State& b);

OdeOptions options_for(const HatConfig& config);

}  // namespace hatsim::radial
