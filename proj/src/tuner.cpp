// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hatsim/errors.hpp"
#include "hatsim/parallel.hpp"
#include "hatsim/radial.hpp"

namespace hatsim::tuner {

using radial::State;

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Hat: return "hat";
    case Mode::Resonance: return "resonance";
    case Mode::CloakLike: return "cloak-like";
  }
  return "unknown";
}

namespace {

State free_state(int n, double omega, double r, bool outgoing) {
  if (!outgoing) return radial::regular_state(n, omega, 1.0, r);
  const specfun::Scaled h = specfun::sph_h_scaled(n, omega * r);
  State s{r, h.value, r * r * omega * h.deriv, h.log_scale};
  s.renormalize();
  return s;
}

Complex shell_k(Complex tau, const HatConfig& c) {
  const Complex kappa = c.convention == ShellConvention::Additive ? 1.0 + tau / c.E : tau;
  return std::sqrt(c.E * kappa);
}

void require_shells(const HatConfig& c) {
  if (c.shells.empty()) throw ConfigError("tuning needs at least one interior shell");
}

}  // namespace

double sh_mismatch(double tau1, const HatConfig& config) {
  require_shells(config);
  const HatConfig c = config.with_tau1(tau1);
  const RadialProfile p = material_profile(c);
  const State s = radial::regular_state_at(p, 0, 2.0, radial::Engine::Auto, radial::options_for(c));
  return radial::normalized_wronskian(s, free_state(0, c.omega(), 2.0, false)).real();
}

double sh_mismatch_inward(double tau1, const HatConfig& config, double r_cut) {
  require_shells(config);
  const HatConfig c = config.with_tau1(tau1);
  const RadialProfile p = material_profile(c);
  if (!(r_cut > 0.0 && r_cut < c.shells.front().radius)) throw DomainError("r_cut must lie inside the first shell");
  const State outer = free_state(0, c.omega(), c.L, false);
  const State s = radial::propagate_state(p, 0, outer, r_cut, radial::Engine::Auto, radial::options_for(c));
  const Complex f = s.flux / r_cut;
  return f.real() / std::hypot(std::abs(s.u), std::abs(f));
}

double dirichlet_mismatch(double tau1, const HatConfig& config) {
  require_shells(config);
  const HatConfig c = config.with_tau1(tau1);
  const RadialProfile p = material_profile(c);
  const State s = radial::regular_state_at(p, 0, c.L, radial::Engine::Auto, radial::options_for(c));
  const double unit = std::max(c.omega(), 1.0) * c.L * c.L;
  return s.u.real() / std::hypot(std::abs(s.u), std::abs(s.flux) / unit);
}

namespace {

// W[u_int, h0] at r = 2 with u_int(0) = 1, as mantissa and exponent.
State outgoing_wronskian(Complex tau1, const HatConfig& config) {
  require_shells(config);
  const HatConfig c = config.with_tau1(tau1.real());
  const RadialProfile p = material_profile(c);
  const double s1 = c.shells.front().radius;
  const State seed = radial::regular_state(0, shell_k(tau1, c), 1.0, s1);
  const State s = radial::propagate_state(p, 0, seed, 2.0, radial::Engine::Auto, radial::options_for(c));
  const State h = free_state(0, c.omega(), 2.0, true);
  const double nh = std::hypot(std::abs(h.u), std::abs(h.flux));
  State w{2.0, (s.u * h.flux - s.flux * h.u) / nh, 0.0, s.log_scale};
  return w;
}

}  // namespace

Complex outgoing_mismatch(Complex tau1, const HatConfig& config) {
  const State w = outgoing_wronskian(tau1, config);
  if (std::log(std::abs(w.u) + 1e-300) + w.log_scale > 700.0) throw OverflowError("outgoing mismatch overflows");
  return w.u * std::exp(w.log_scale);
}

double limit_mismatch(double tau1, const HatConfig& config) {
  require_shells(config);
  const HatConfig c = config.with_tau1(tau1);
  const RadialProfile p = interior_profile(c, 1.0);
  const State s = radial::regular_state_at(p, 0, 1.0, radial::Engine::Auto, radial::options_for(c));
  return s.flux.real() / std::hypot(c.omega() * std::abs(s.u), std::abs(s.flux));
}

double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb, double xtol,
             RootTrace* trace) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw NoRootError("Brent refinement needs a sign change");
  double c = a, fc = fa, d = b - a, e = d;
  double best = INFINITY;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    if (trace && std::abs(fb) < best) {
      best = std::abs(fb);
      trace->iterates.push_back(b);
      trace->residuals.push_back(best);
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  throw ConvergenceError("Brent refinement did not converge");
}

namespace {

std::vector<double> grid_of(Bracket br, double step) {
  if (!(br.hi > br.lo)) throw ConfigError("tau1 bracket must satisfy lo < hi");
  if (!(step > 0.0)) throw ConfigError("scan step must be positive");
  const auto count = static_cast<std::size_t>(std::ceil((br.hi - br.lo) / step - 1e-9)) + 1;
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = std::min(br.lo + static_cast<double>(i) * step, br.hi);
  return x;
}

}  // namespace

double find_smallest_root(const std::function<double(double)>& f, Bracket br, const ScanOptions& opts,
                          RootTrace* trace) {
  const std::vector<double> x = grid_of(br, opts.step);
  std::vector<double> v(x.size());
  parallel_for(x.size(), opts.workers, [&](std::size_t i) { v[i] = f(x[i]); });
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(v[i])) continue;
    if (v[i] == 0.0) return x[i];
    if (i + 1 < x.size() && std::isfinite(v[i + 1]) && (v[i] > 0) != (v[i + 1] > 0))
      return brent(f, x[i], x[i + 1], v[i], v[i + 1], opts.xtol, trace);
  }
  std::ostringstream os;
  os << "no sign change of the mismatch on [" << br.lo << ", " << br.hi << "]";
  throw NoRootError(os.str());
}

double find_tau1_sh(const HatConfig& config, Bracket br, const ScanOptions& opts, RootTrace* trace) {
  config.validate();
  require_shells(config);
  return find_smallest_root([&](double t) { return sh_mismatch(t, config); }, br, opts, trace);
}

double find_tau1_limit(const HatConfig& config, Bracket br, const ScanOptions& opts) {
  config.validate();
  require_shells(config);
  return find_smallest_root([&](double t) { return limit_mismatch(t, config); }, br, opts);
}

Complex resonance_pole(const HatConfig& config, double seed) {
  // common exponent taken at the seed so the secant sees one analytic function
  const double ls = outgoing_wronskian(seed, config).log_scale;
  auto D = [&](Complex t) {
    const State w = outgoing_wronskian(t, config);
    return w.u * std::exp(w.log_scale - ls);
  };
  Complex x0 = seed, x1 = seed + 1e-3 * std::max(1.0, std::abs(seed));
  Complex f0 = D(x0), f1 = D(x1);
  for (int it = 0; it < 100; ++it) {
    if (f1 == f0) break;
    const Complex x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = D(x1);
    if (!std::isfinite(x1.real()) || !std::isfinite(x1.imag())) break;
    if (std::abs(x1 - x0) <= 1e-12 * std::max(1.0, std::abs(x1))) return x1;
  }
  throw ConvergenceError("resonance pole iteration did not converge");
}

double find_tau1_resonance(const HatConfig& config, Bracket br, const ScanOptions& opts, ResonanceRule rule) {
  config.validate();
  require_shells(config);
  if (rule == ResonanceRule::Dirichlet) {
    ScanOptions o = opts;
    o.xtol = std::min(opts.xtol, 1e-10);
    return find_smallest_root([&](double t) { return dirichlet_mismatch(t, config); }, br, o);
  }
  const std::vector<double> x = grid_of(br, opts.step);
  std::vector<double> v(x.size());
  parallel_for(x.size(), opts.workers,
               [&](std::size_t i) {
                 const State w = outgoing_wronskian(x[i], config);
                 v[i] = std::log(std::abs(w.u) + 1e-300) + w.log_scale;
               });
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (!(v[i] <= v[i - 1] && v[i] <= v[i + 1])) continue;
    Complex pole;
    try {
      pole = resonance_pole(config, x[i]);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(pole.real() - x[i]) <= 2.0 * opts.step && pole.real() >= br.lo && pole.real() <= br.hi)
      return pole.real();
  }
  std::ostringstream os;
  os << "no outgoing-wave resonance on [" << br.lo << ", " << br.hi << "]";
  throw NoRootError(os.str());
}

ModeReport classify_mode(double tau1, const HatConfig& config, const ModeThresholds& th) {
  require_shells(config);
  const HatConfig c = config.with_tau1(tau1);
  auto prof = std::make_shared<const RadialProfile>(material_profile(c));
  const radial::RadialSolution reg = radial::solve_regular(prof, 0, radial::Engine::Auto, radial::options_for(c), 2.0);
  const State s2 = reg.at(2.0);
  const State j = free_state(0, c.omega(), 2.0, false);
  const State h = free_state(0, c.omega(), 2.0, true);
  const Complex wj = s2.u * j.flux - s2.flux * j.u;
  const Complex wh = s2.u * h.flux - s2.flux * h.u;
  const Complex c0 = -wj / wh * std::exp(j.log_scale - h.log_scale);
  // exterior state j0 + c0 h0 at r = 2, unscaled
  const Complex eu = j.u * std::exp(j.log_scale) + c0 * h.u * std::exp(h.log_scale);
  const Complex ef = j.flux * std::exp(j.log_scale) + c0 * h.flux * std::exp(h.log_scale);
  // amplitude A with A * reg(2) = exterior(2), least squares over (u, flux)
  const Complex A = (eu * std::conj(s2.u) + ef * std::conj(s2.flux)) / (std::norm(s2.u) + std::norm(s2.flux));
  double amp = 0.0;
  constexpr int kSamples = 400;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = static_cast<double>(i) / kSamples;
    const State s = reg.at(r);
    amp = std::max(amp, std::abs(A * s.u) * std::exp(s.log_scale - s2.log_scale));
  }
  ModeReport rep;
  rep.tau1 = tau1;
  rep.c0 = c0;
  rep.interior_amplitude = amp;
  rep.far_field_residual = std::abs(c0);
  if (amp <= th.amp_threshold) rep.mode = Mode::CloakLike;
  else if (rep.far_field_residual < th.hat_tol) rep.mode = Mode::Hat;
  else rep.mode = Mode::Resonance;
  return rep;
}

}  // namespace hatsim::tuner
