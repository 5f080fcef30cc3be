// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hatsim/errors.hpp"

namespace hatsim::radial {

namespace {

const Complex I(0.0, 1.0);
constexpr double kRenormHigh = 1e50;
constexpr double kRenormLow = 1e-50;
constexpr double kResonanceTol = 1e-6;

double safe_exp(double x) { return x < -745.0 ? 0.0 : std::exp(x); }

}  // namespace

void State::renormalize() {
  const double m = std::max(std::abs(u), std::abs(flux));
  if (m > 0.0 && std::isfinite(m)) {
    u /= m;
    flux /= m;
    log_scale += std::log(m);
  }
}

double State::log_magnitude() const {
  const double m = std::max(std::abs(u), std::abs(flux));
  return m > 0.0 ? std::log(m) + log_scale : -INFINITY;
}

Complex State::u_value() const {
  if (u == Complex(0.0)) return 0.0;
  if (std::log(std::abs(u)) + log_scale > 690.0) throw OverflowError("radial solution too large to unscale");
  return u * safe_exp(log_scale);
}

Complex State::flux_value() const {
  if (flux == Complex(0.0)) return 0.0;
  if (std::log(std::abs(flux)) + log_scale > 690.0) throw OverflowError("radial solution too large to unscale");
  return flux * safe_exp(log_scale);
}

State to_state(const RadialProfile& p, const CauchyData& c) {
  const double r = c.radius;
  State s{r, c.u, p.sigma_r(r) * r * r * c.du_dr, c.log_scale};
  return s;
}

CauchyData to_cauchy(const RadialProfile& p, const State& s) {
  const double r = s.r;
  const double w = p.sigma_r(r) * r * r;
  Complex du = 0.0;
  if (w > 0.0) du = s.flux / w;
  return {r, s.u, du, s.log_scale};
}

OdeOptions options_for(const HatConfig& c) {
  OdeOptions o;
  o.rtol = c.ode_tol;
  return o;
}

bool closed_form(const RadialProfile& p, const Region& g) {
  if (p.has_extra_potential()) return false;
  return g.kind == RegionKind::Constant || g.kind == RegionKind::CloakPushforward;
}

Complex local_k(const RadialProfile& p, const Region& g) {
  if (g.kind == RegionKind::CloakPushforward) return std::sqrt(p.omega2());
  return std::sqrt(Complex((p.omega2() * g.kappa - g.potential) / g.sigma, 0.0));
}

namespace {

// Scaled basis {j_n, h_n} (or {r^n, r^-(n+1)} when k = 0) with fluxes.
struct Basis {
  Complex f, F, g, G;
  double lf = 0.0, lg = 0.0;
  Complex det;  // unscaled f G - g F
};

Basis basis_at(const RadialProfile& p, const Region& reg, int n, double r) {
  double x = r, sigma = reg.sigma;
  if (reg.kind == RegionKind::CloakPushforward) {
    x = 2.0 * (r - 1.0);
    sigma = 1.0;
  }
  if (!(x > 0.0)) throw SingularityError("basis requested at the coordinate origin");
  const Complex k = local_k(p, reg);
  Basis b;
  if (k == Complex(0.0)) {
    const double lx = std::log(x);
    b.f = 1.0;
    b.F = sigma * n * x;
    b.lf = n * lx;
    b.g = 1.0;
    b.G = -sigma * (n + 1.0) * x;
    b.lg = -(n + 1.0) * lx;
    b.det = -sigma * (2.0 * n + 1.0);
    return b;
  }
  const Complex z = k * x;
  const specfun::Scaled js = specfun::sph_j_scaled(n, z);
  const specfun::Scaled hs = specfun::sph_h_scaled(n, z);
  const Complex c = sigma * x * x * k;
  b.f = js.value;
  b.F = c * js.deriv;
  b.lf = js.log_scale;
  b.g = hs.value;
  b.G = c * hs.deriv;
  b.lg = hs.log_scale;
  b.det = I * sigma / k;
  return b;
}

TransferMatrix closed_transfer(const RadialProfile& p, const Region& reg, int n, double a, double b) {
  TransferMatrix t;
  if (a == b) return t;
  const Basis A = basis_at(p, reg, n, a);
  const Basis B = basis_at(p, reg, n, b);
  const double sa = B.lf + A.lg, sb = B.lg + A.lf;
  const double S = std::max(sa, sb);
  const double ea = safe_exp(sa - S), eb = safe_exp(sb - S);
  const Complex d = A.det;
  t.m[0] = (B.f * A.G * ea - B.g * A.F * eb) / d;
  t.m[1] = (B.g * A.f * eb - B.f * A.g * ea) / d;
  t.m[2] = (B.F * A.G * ea - B.G * A.F * eb) / d;
  t.m[3] = (B.G * A.f * eb - B.F * A.g * ea) / d;
  t.log_scale = S;
  return t;
}

struct Rhs {
  const RadialProfile& p;
  const Region& g;
  double l;

  void operator()(double r, const Complex* y, Complex* dy) const {
    const double sr = g.sigma_r(r), st = g.sigma_t(r), kap = g.kappa_at(r);
    const double q = g.potential_at(r) + p.extra_potential(r);
    dy[0] = y[1] / (sr * r * r);
    dy[1] = (st * l + r * r * (q - p.omega2() * kap)) * y[0];
  }
};

std::size_t region_for_span(const RadialProfile& p, double a, double b) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  const std::size_t idx = p.index_of(0.5 * (lo + hi));
  const Region& g = p.regions()[idx];
  const double tol = 1e-14 * std::max(1.0, hi);
  if (lo < g.r_a - tol || hi > g.r_b + tol) {
    std::ostringstream os;
    os << "integration span [" << lo << ", " << hi << "] crosses an interface";
    throw DomainError(os.str());
  }
  return idx;
}

}  // namespace

BasisPair region_basis(const RadialProfile& p, const Region& g, int n, double r) {
  const Basis b = basis_at(p, g, n, r);
  return {State{r, b.f, b.F, b.lf}, State{r, b.g, b.G, b.lg}, b.det};
}

State TransferMatrix::apply(const State& s, double r_to) const {
  State out;
  out.r = r_to;
  out.u = m[0] * s.u + m[1] * s.flux;
  out.flux = m[2] * s.u + m[3] * s.flux;
  out.log_scale = s.log_scale + log_scale;
  out.renormalize();
  return out;
}

State regular_state(int n, Complex k, double sigma, double r) {
  State s;
  s.r = r;
  if (r == 0.0) {
    s.u = n == 0 ? 1.0 : 0.0;
    s.flux = 0.0;
    return s;
  }
  if (k == Complex(0.0)) {
    s.u = 1.0;
    s.flux = sigma * n * r;
    s.log_scale = n * std::log(r);
    return s;
  }
  const specfun::Scaled js = specfun::sph_j_scaled(n, k * r);
  s.u = js.value;
  s.flux = sigma * r * r * k * js.deriv;
  s.log_scale = js.log_scale;
  s.renormalize();
  return s;
}

namespace {

// Regular state at small r in the first region, also for non-closed-form regions.
State regular_seed(const RadialProfile& p, int n, double r) {
  const Region& g = p.regions().front();
  if (g.kind != RegionKind::Constant) throw SingularityError("innermost region must be constant");
  const double k2 = (p.omega2() * g.kappa - g.potential - p.extra_potential(r)) / g.sigma;
  return regular_state(n, std::sqrt(Complex(k2, 0.0)), g.sigma, r);
}

}  // namespace

State regular_start(const RadialProfile& p, int n, double r) { return regular_seed(p, n, r); }

State integrate_state(const RadialProfile& p, int n, const State& from, double to, const OdeOptions& opts,
                      std::vector<Sample>* samples) {
  if (from.r < opts.r_min || to < opts.r_min)
    throw SingularityError("direct integration reaches r = 0; start from the regular branch");
  const std::size_t idx = region_for_span(p, from.r, to);
  const Region& g = p.regions()[idx];
  const Rhs rhs{p, g, double(n) * (n + 1.0)};

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  State s = from;
  s.renormalize();
  if (samples) samples->push_back({s.r, s.u, s.flux, s.log_scale});
  const double span = to - s.r;
  if (span == 0.0) return s;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = dir * std::min(std::abs(span), 1e-3 * std::max(1.0, std::abs(span)));
  double peak_u = std::abs(s.u), peak_f = std::abs(s.flux);

  Complex y[2] = {s.u, s.flux}, k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2], yn[2];
  double r = s.r;
  rhs(r, y, k1);
  long steps = 0;
  while (dir * (to - r) > 0.0) {
    if (++steps > opts.max_steps) throw ToleranceError("radial integrator exceeded its step budget");
    bool last = false;
    if (dir * (r + h - to) >= 0.0) {
      h = to - r;
      last = true;
    }
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
    rhs(r + c2 * h, yt, k2);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(r + c3 * h, yt, k3);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(r + c4 * h, yt, k4);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(r + c5 * h, yt, k5);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double r_new = last ? to : r + h;
    rhs(r_new, yt, k6);
    for (int i = 0; i < 2; ++i)
      yn[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(r_new, yn, k7);
    double err = 0.0;
    const double peaks[2] = {peak_u, peak_f};
    for (int i = 0; i < 2; ++i) {
      const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opts.rtol * (std::max(std::abs(y[i]), std::abs(yn[i])) + 1e-3 * peaks[i]) + 1e-300;
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) err = 1e10;
    if (err <= 1.0) {
      r = r_new;
      y[0] = yn[0];
      y[1] = yn[1];
      k1[0] = k7[0];
      k1[1] = k7[1];
      peak_u = std::max(peak_u, std::abs(y[0]));
      peak_f = std::max(peak_f, std::abs(y[1]));
      const double m = std::max(std::abs(y[0]), std::abs(y[1]));
      if (m > kRenormHigh || (m < kRenormLow && m > 0.0)) {
        for (int i = 0; i < 2; ++i) {
          y[i] /= m;
          k1[i] /= m;
        }
        peak_u /= m;
        peak_f /= m;
        s.log_scale += std::log(m);
      }
      if (samples) samples->push_back({r, y[0], y[1], s.log_scale});
      if (last) break;
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
    if (std::abs(h) < opts.min_step) throw ToleranceError("radial integrator step fell below the floor");
  }
  s.r = to;
  s.u = y[0];
  s.flux = y[1];
  s.renormalize();
  return s;
}

RadialSolution integrate(const RadialProfile& p, int n, const CauchyData& from, double to,
                         const OdeOptions& opts) {
  auto prof = std::make_shared<const RadialProfile>(p);
  RadialSolution sol(prof, n, opts);
  std::vector<Sample> smp;
  integrate_state(*prof, n, to_state(*prof, from), to, opts, &smp);
  if (to < from.radius) std::reverse(smp.begin(), smp.end());
  for (const Sample& s : smp) sol.push(s);
  sol.mark_direct(region_for_span(*prof, from.radius, to));
  return sol;
}

TransferMatrix transfer_matrix(const RadialProfile& p, int n, double a, double b, const OdeOptions& opts) {
  if (a == b) return {};
  const std::size_t idx = region_for_span(p, a, b);
  const Region& g = p.regions()[idx];
  if (closed_form(p, g)) return closed_transfer(p, g, n, a, b);
  State c1 = integrate_state(p, n, State{a, 1.0, 0.0, 0.0}, b, opts);
  State c2 = integrate_state(p, n, State{a, 0.0, 1.0, 0.0}, b, opts);
  const double S = std::max(c1.log_scale, c2.log_scale);
  const double f1 = safe_exp(c1.log_scale - S), f2 = safe_exp(c2.log_scale - S);
  TransferMatrix t;
  t.m = {c1.u * f1, c2.u * f2, c1.flux * f1, c2.flux * f2};
  t.log_scale = S;
  return t;
}

State propagate_state(const RadialProfile& p, int n, const State& from, double to, Engine engine,
                      const OdeOptions& opts) {
  if (to < 0.0 || to > p.outer_radius() || from.r < 0.0 || from.r > p.outer_radius())
    throw DomainError("propagation radius outside the profile");
  State s = from;
  if (s.r == 0.0) {
    if (to == 0.0) return s;
    if (n != 0) throw SingularityError("Cauchy data at r = 0 only defines the n = 0 regular branch");
    const Complex amp = s.u;
    const double ls = s.log_scale;
    const Region& g0 = p.regions().front();
    const bool closed0 = engine == Engine::Auto && closed_form(p, g0);
    const double r1 = closed0 ? std::min(to, g0.r_b) : std::min(to, opts.r_min);
    s = closed0 ? regular_state(n, local_k(p, g0), g0.sigma, r1) : regular_seed(p, n, r1);
    s.u *= amp;
    s.flux *= amp;
    s.log_scale += ls;
  }
  const std::vector<double> bp = p.breakpoints();
  while (s.r != to) {
    double next;
    if (to > s.r) {
      auto it = std::upper_bound(bp.begin(), bp.end(), s.r);
      next = it == bp.end() ? to : std::min(*it, to);
    } else {
      auto it = std::lower_bound(bp.begin(), bp.end(), s.r);
      next = it == bp.begin() ? to : std::max(*(it - 1), to);
    }
    const std::size_t idx = region_for_span(p, s.r, next);
    const Region& g = p.regions()[idx];
    if (engine == Engine::Auto && closed_form(p, g))
      s = closed_transfer(p, g, n, s.r, next).apply(s, next);
    else
      s = integrate_state(p, n, s, next, opts);
    s.r = next;
  }
  return s;
}

CauchyData propagate(const RadialProfile& p, int n, const CauchyData& from, double to, Engine engine,
                     const OdeOptions& opts) {
  return to_cauchy(p, propagate_state(p, n, to_state(p, from), to, engine, opts));
}

RadialSolution::RadialSolution(std::shared_ptr<const RadialProfile> profile, int n, OdeOptions opts)
    : profile_(std::move(profile)), n_(n), opts_(opts) {}

bool RadialSolution::region_direct(std::size_t region) const {
  return std::find(direct_.begin(), direct_.end(), region) != direct_.end();
}

void RadialSolution::scale(Complex factor, double log_factor) {
  amp_ *= factor;
  amp_log_ += log_factor;
  const double m = std::abs(amp_);
  if (m > 0.0) {
    amp_ /= m;
    amp_log_ += std::log(m);
  }
}

State RadialSolution::hermite(std::size_t i, double r) const {
  const Sample& A = samples_[i];
  const Sample& B = samples_[i + 1];
  const std::size_t idx = profile_->index_of(0.5 * (A.r + B.r));
  const Region& g = profile_->regions()[idx];
  const Rhs rhs{*profile_, g, double(n_) * (n_ + 1.0)};
  const double rel = safe_exp(B.log_scale - A.log_scale);
  Complex ya[2] = {A.u, A.flux}, yb[2] = {B.u * rel, B.flux * rel}, da[2], db[2];
  rhs(A.r, ya, da);
  rhs(B.r, yb, db);
  const double h = B.r - A.r;
  const double t = (r - A.r) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  State s;
  s.r = r;
  s.u = h00 * ya[0] + h10 * h * da[0] + h01 * yb[0] + h11 * h * db[0];
  s.flux = h00 * ya[1] + h10 * h * da[1] + h01 * yb[1] + h11 * h * db[1];
  s.log_scale = A.log_scale;
  return s;
}

State RadialSolution::at(double r) const {
  if (samples_.empty()) throw DomainError("empty radial solution");
  const double lo = regular_origin_ ? 0.0 : r_lo();
  if (r < lo || r > r_hi()) {
    std::ostringstream os;
    os << "radius " << r << " outside solution range [" << lo << ", " << r_hi() << "]";
    throw DomainError(os.str());
  }
  const std::size_t idx = profile_->index_of(r);
  const Region& g = profile_->regions()[idx];
  State s;
  if (regular_origin_ && idx == 0 && (!region_direct(0) || r < samples_.front().r)) {
    s = region_direct(0) ? regular_seed(*profile_, n_, std::max(r, 0.0))
                         : regular_state(n_, local_k(*profile_, g), g.sigma, r);
    if (region_direct(0) && r < samples_.front().r) {
      // match the seed's amplitude to the first integrator sample
      const State s0 = regular_seed(*profile_, n_, samples_.front().r);
      const Sample& f = samples_.front();
      Complex ratio = std::abs(s0.u) > std::abs(s0.flux) ? f.u / s0.u : f.flux / s0.flux;
      s.u *= ratio;
      s.flux *= ratio;
      s.log_scale += f.log_scale - s0.log_scale;
    }
  } else {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), r,
                               [](double x, const Sample& a) { return x < a.r; });
    std::size_t i = it == samples_.begin() ? 0 : static_cast<std::size_t>(it - samples_.begin()) - 1;
    if (i + 1 >= samples_.size()) i = samples_.size() >= 2 ? samples_.size() - 2 : 0;
    if (samples_[i].r == r || samples_.size() == 1) {
      const Sample& a = samples_[samples_[i].r == r ? i : i];
      s = State{r, a.u, a.flux, a.log_scale};
    } else if (region_direct(idx)) {
      s = hermite(i, r);
    } else {
      // nearest sample inside this region (its start)
      std::size_t j = i;
      while (j > 0 && samples_[j].r > g.r_a) --j;
      if (samples_[j].r < g.r_a) ++j;
      const Sample& a = samples_[j];
      s = closed_transfer(*profile_, g, n_, a.r, r).apply(State{a.r, a.u, a.flux, a.log_scale}, r);
    }
  }
  s.u *= amp_;
  s.flux *= amp_;
  s.log_scale += amp_log_;
  s.renormalize();
  return s;
}

Complex RadialSolution::du_dr(double r) const {
  const State s = at(r);
  const double w = profile_->sigma_r(r) * r * r;
  if (w == 0.0) {
    if (n_ == 1) {
      // u ~ c r near the origin
      const double h = 1e-6 * std::max(1.0, r_hi());
      return u(h) / h;
    }
    return 0.0;
  }
  return s.flux_value() / w;
}

RadialSolution solve_regular(std::shared_ptr<const RadialProfile> p, int n, Engine engine, const OdeOptions& opts,
                             double r_to) {
  if (r_to < 0.0) r_to = p->outer_radius();
  RadialSolution sol(p, n, opts);
  sol.set_regular_origin(true);
  const auto& regs = p->regions();
  State s;
  for (std::size_t i = 0; i < regs.size(); ++i) {
    const Region& g = regs[i];
    if (g.r_a >= r_to) break;
    const double b = std::min(g.r_b, r_to);
    const bool closed = engine == Engine::Auto && closed_form(*p, g);
    if (i == 0) {
      if (closed) {
        s = regular_state(n, local_k(*p, g), g.sigma, b);
        sol.push({0.0, n == 0 ? 1.0 : 0.0, 0.0, 0.0});
        sol.push({b, s.u, s.flux, s.log_scale});
      } else {
        std::vector<Sample> smp;
        s = integrate_state(*p, n, regular_seed(*p, n, opts.r_min), b, opts, &smp);
        for (const Sample& x : smp) sol.push(x);
        sol.mark_direct(0);
      }
      continue;
    }
    if (closed) {
      s = closed_transfer(*p, g, n, s.r, b).apply(s, b);
      sol.push({b, s.u, s.flux, s.log_scale});
    } else {
      std::vector<Sample> smp;
      s = integrate_state(*p, n, s, b, opts, &smp);
      for (std::size_t k = 1; k < smp.size(); ++k) sol.push(smp[k]);
      sol.mark_direct(i);
    }
  }
  return sol;
}

State regular_state_at(const RadialProfile& p, int n, double r_to, Engine engine, const OdeOptions& opts) {
  const Region& g0 = p.regions().front();
  State s;
  if (engine == Engine::Auto && closed_form(p, g0)) {
    const double b = std::min(g0.r_b, r_to);
    s = regular_state(n, local_k(p, g0), g0.sigma, b);
  } else {
    s = regular_seed(p, n, std::min(opts.r_min, r_to));
  }
  return propagate_state(p, n, s, r_to, engine, opts);
}

Complex normalized_wronskian(const State& a, const State& b) {
  const double na = std::hypot(std::abs(a.u), std::abs(a.flux));
  const double nb = std::hypot(std::abs(b.u), std::abs(b.flux));
  return (a.u * b.flux - a.flux * b.u) / (na * nb);
}

double normalized_wronskian_abs(const State& a, const State& b) { return std::abs(normalized_wronskian(a, b)); }

Complex dtn_harmonic(const HatConfig& c, int n) {
  const RadialProfile p = material_profile(c);
  const State s = regular_state_at(p, n, c.L, Engine::Auto, options_for(c));
  const double w = p.sigma_r(c.L) * c.L * c.L;
  const double unit = std::max(c.omega(), 1.0) * w;
  if (std::abs(s.u) <= kResonanceTol * std::hypot(std::abs(s.u), std::abs(s.flux) / unit))
    throw ResonanceError("u(L) vanishes: E is a Dirichlet eigenvalue of the configuration");
  return s.flux / (w * s.u);
}

}  // namespace hatsim::radial
