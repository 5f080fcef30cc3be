// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/observables.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "hatsim/errors.hpp"
#include "hatsim/quadrature.hpp"
#include "hatsim/radial.hpp"
#include "hatsim/specfun.hpp"
#include "hatsim/tuner.hpp"

namespace hatsim::observables {

namespace {

constexpr double kPi = std::numbers::pi;
using GL = boost::math::quadrature::gauss<double, 10>;

}  // namespace

double region_mass(const fields::EffectiveField& field, Interval iv, double tol) {
  if (iv.r1 < 0.0 || iv.r2 > field.outer_radius() * (1.0 + 1e-12) || iv.r2 < iv.r1)
    throw DomainError("mass interval must lie inside [0, L]");
  const double r2 = std::min(iv.r2, field.outer_radius());
  std::vector<double> br = field.breakpoints();
  br.push_back(1.0);
  return integrate([&](double r) { return r * r * field.sphere_density(r); }, iv.r1, r2, tol, br);
}

fields::HarmonicSolution s_wave(const HatConfig& c, Drive drive) {
  const double w = c.omega();
  const double j0L = specfun::sph_bessel(specfun::BesselKind::J, 0, w * c.L).real();
  if (drive == Drive::Auto) drive = std::abs(j0L) < 1e-8 ? Drive::Eigen : Drive::Dirichlet;
  if (drive == Drive::Eigen) return fields::solve_eigen_radial(c);
  return fields::solve_dirichlet_radial(c, j0L);
}

fields::EffectiveField s_wave_field(const HatConfig& c, Drive drive) {
  return fields::EffectiveField::finite(c, {s_wave(c, drive)});
}

std::vector<RegionProb> probabilities(const HatConfig& ce, const HatConfig& cs, const std::vector<RegionSpec>& regions,
                                      Drive drive) {
  if (ce.L != cs.L || ce.E != cs.E) throw ConfigError("both balls must share L and E");
  std::vector<RegionProb> out;
  struct Ball {
    std::string name;
    fields::EffectiveField field;
    double total;
    double exterior;
  };
  std::vector<Ball> balls;
  for (const auto& [name, cfg] : {std::pair{std::string("empty"), ce}, std::pair{std::string("sh"), cs}}) {
    fields::EffectiveField f = s_wave_field(cfg, drive);
    const double total = region_mass(f, {0.0, cfg.L}, cfg.quad_tol);
    const double ext = region_mass(f, {2.0, cfg.L}, cfg.quad_tol);
    balls.push_back({name, std::move(f), total, ext});
  }
  for (const Ball& b : balls)
    for (const RegionSpec& r : regions) {
      const double m = region_mass(b.field, r.interval, b.field.config().quad_tol);
      out.push_back({r.name, b.name, r.interval, m, b.total, m / b.total});
    }
  for (const Ball& b : balls)
    for (const RegionSpec& r : regions) {
      if (r.interval.r1 < 2.0) continue;
      const double m = region_mass(b.field, r.interval, b.field.config().quad_tol);
      out.push_back({r.name + "|exterior", b.name, r.interval, m, b.exterior, m / b.exterior});
    }
  return out;
}

double strength(const HatConfig& c) {
  const fields::PhiMode phi = fields::compute_phi(c);
  return 1.0 / (phi.phi_at_1 * phi.phi_at_1);
}

MonteReport monte_game(const GameSpec& g, const HatConfig& ce, const HatConfig& cs, Drive drive) {
  if (g.n_balls < 2) throw ConfigError("the game needs at least two balls");
  if (!(g.region.r1 >= 2.0 && g.region.r2 <= ce.L && g.region.r1 < g.region.r2))
    throw ConfigError("game region must lie in (2, L)");
  MonteReport rep;
  const fields::EffectiveField fe = s_wave_field(ce, drive);
  const fields::EffectiveField fs = s_wave_field(cs, drive);
  rep.a_em = region_mass(fe, g.region, ce.quad_tol);
  rep.c_em = region_mass(fe, {0.0, ce.L}, ce.quad_tol);
  rep.a_sh = region_mass(fs, g.region, cs.quad_tol);
  rep.c_sh = region_mass(fs, {0.0, cs.L}, cs.quad_tol);
  rep.mu_em = rep.a_em / rep.c_em;
  rep.mu_sh = rep.a_sh / rep.c_sh;
  rep.p = 1.0 / g.n_balls;
  rep.bob_profit = rep.p * (rep.mu_sh - rep.mu_em);
  return rep;
}

RadialDensity uniform_ball(double delta, double mass) {
  if (!(delta > 0.0)) throw DomainError("ball radius must be positive");
  const double rho = mass * 3.0 / (4.0 * kPi * delta * delta * delta);
  return {[=](double r) { return r <= delta ? rho : 0.0; }, delta, {}};
}

RadialDensity field_density(const fields::EffectiveField& field, double tol) {
  const double L = field.outer_radius();
  const double Z = region_mass(field, {0.0, L}, tol);
  if (!(Z > 0.0)) throw DomainError("field has zero mass");
  auto f = std::make_shared<fields::EffectiveField>(field);
  std::vector<double> br = field.breakpoints();
  br.push_back(1.0);
  return {[f, Z](double r) { return f->sphere_density(r) / (4.0 * kPi * Z); }, L, br};
}

double coulomb_veff(const RadialDensity& d, double r, double tol) {
  if (r < 0.0) throw DomainError("negative radius");
  const double inner_hi = std::min(r, d.r_max);
  double v = 0.0;
  if (r > 0.0) v += integrate([&](double s) { return 4.0 * kPi * s * s * d.f(s); }, 0.0, inner_hi, tol, d.breaks) / r;
  if (r < d.r_max) v += integrate([&](double s) { return 4.0 * kPi * s * d.f(s); }, r, d.r_max, tol, d.breaks);
  return v;
}

namespace {

double hermite(double a, double b, double fa, double fb, double da, double db, double x) {
  const double h = b - a, t = (x - a) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * fa + h10 * h * da + h01 * fb + h11 * h * db;
}

double slope(double r, double M) { return r > 0.0 ? -M / (r * r) : 0.0; }

}  // namespace

CoulombTable::CoulombTable(const RadialDensity& d, int cells) {
  if (!(d.r_max > 0.0)) throw DomainError("density support must be positive");
  std::vector<double> br{0.0};
  for (double x : d.breaks)
    if (x > 0.0 && x < d.r_max) br.push_back(x);
  br.push_back(d.r_max);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  r_.push_back(0.0);
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    const double len = br[i + 1] - br[i];
    const int m = std::max(4, static_cast<int>(std::lround(cells * len / d.r_max)));
    for (int k = 1; k <= m; ++k) r_.push_back(k == m ? br[i + 1] : br[i] + len * k / m);
  }
  const std::size_t nc = r_.size() - 1;
  std::vector<double> dM(nc), dN(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    dM[i] = GL::integrate([&](double s) { return 4.0 * kPi * s * s * d.f(s); }, r_[i], r_[i + 1]);
    dN[i] = GL::integrate([&](double s) { return 4.0 * kPi * s * d.f(s); }, r_[i], r_[i + 1]);
  }
  M_.assign(r_.size(), 0.0);
  for (std::size_t i = 0; i < nc; ++i) M_[i + 1] = M_[i] + dM[i];
  std::vector<double> N(r_.size(), 0.0);
  for (std::size_t i = nc; i-- > 0;) N[i] = N[i + 1] + dN[i];
  V_.resize(r_.size());
  for (std::size_t i = 0; i < r_.size(); ++i) V_[i] = (r_[i] > 0.0 ? M_[i] / r_[i] : 0.0) + N[i];
  double e = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    const double a = r_[i], b = r_[i + 1];
    const double sa = slope(a, M_[i]), sb = slope(b, M_[i + 1]);
    e += GL::integrate(
        [&](double s) { return 2.0 * kPi * s * s * d.f(s) * hermite(a, b, V_[i], V_[i + 1], sa, sb, s); }, a, b);
  }
  e1_ = e;
}

double CoulombTable::operator()(double r) const {
  if (r < 0.0) throw DomainError("negative radius");
  if (r >= r_.back()) return M_.back() / r;
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
  return hermite(r_[i], r_[i + 1], V_[i], V_[i + 1], slope(r_[i], M_[i]), slope(r_[i + 1], M_[i + 1]), r);
}

double perturbation_e1(const RadialDensity& d, int cells) { return CoulombTable(d, cells).e1(); }

double e1_no_sh(const HatConfig& ce, Drive drive) {
  return perturbation_e1(field_density(s_wave_field(ce, drive), ce.quad_tol));
}

double charge_qprime(const fields::EffectiveField& field, double tol) {
  const double total = region_mass(field, {0.0, field.outer_radius()}, tol);
  return region_mass(field, {0.0, 1.0}, tol) / total;
}

namespace {

struct ShiftProblem {
  HatConfig cfg;
  std::shared_ptr<const CoulombTable> V;
  double a;

  RadialProfile profile(double dE) const {
    RadialProfile p = material_profile(cfg);
    const HatConfig c = cfg;
    const auto table = V;
    const double aa = a;
    p.set_extra_potential([c, table, aa, dE](double r) { return cloak_weight(r, c) * (aa * (*table)(r) - dE); });
    return p;
  }

  double mismatch(double dE) const {
    const RadialProfile p = profile(dE);
    const radial::State s = radial::regular_state_at(p, 0, cfg.L, radial::Engine::Auto, radial::options_for(cfg));
    const double unit = std::max(cfg.omega(), 1.0) * cfg.L * cfg.L;
    return s.u.real() / std::hypot(std::abs(s.u), std::abs(s.flux) / unit);
  }

  double eigen_shift(double center, double limit) const {
    auto f = [&](double x) { return mismatch(x); };
    double w = 0.25 * std::abs(center) + 1e-7 * cfg.E;
    while (w <= limit) {
      const double lo = center - w, hi = center + w;
      const double flo = f(lo), fhi = f(hi);
      if ((flo > 0) != (fhi > 0) || flo == 0.0 || fhi == 0.0)
        return tuner::brent(f, lo, hi, flo, fhi, 1e-13 * cfg.E);
      w *= 3.0;
    }
    throw ConvergenceError("eigenvalue search left the perturbative neighborhood");
  }
};

}  // namespace

CoulombResult solve_with_coulomb(const HatConfig& c, double a, const CoulombOptions& opts) {
  c.validate();
  fields::EffectiveField base = s_wave_field(c, Drive::Eigen);
  {
    const radial::State s = radial::regular_state_at(material_profile(c), 0, c.L);
    const double unit = std::max(c.omega(), 1.0) * c.L * c.L;
    if (std::abs(s.u) > 1e-4 * std::hypot(std::abs(s.u), std::abs(s.flux) / unit))
      throw ConfigError("E is not a Dirichlet eigenvalue of the configuration on B_L");
  }
  auto table = std::make_shared<const CoulombTable>(field_density(base, c.quad_tol), opts.table_cells);
  CoulombResult res;
  res.a = a;
  res.E1 = table->e1();
  res.field = base.solutions().front();
  if (a == 0.0) {
    res.E_eff = c.E;
    return res;
  }
  const double guess = 2.0 * a * res.E1;
  const double limit = opts.neighborhood * std::abs(guess) + 1e-3 * c.E;
  const ShiftProblem p0{c, table, 0.0};
  const ShiftProblem pa{c, table, a};
  const double d0 = p0.eigen_shift(0.0, limit);
  const double da = pa.eigen_shift(guess + d0, limit);
  res.E_eff = c.E + (da - d0);
  // field at the shifted eigenvalue, slope-normalized at L
  auto prof = std::make_shared<const RadialProfile>(pa.profile(da));
  fields::HarmonicSolution h;
  h.radial = radial::solve_regular(prof, 0, radial::Engine::Auto, radial::options_for(c));
  h.normalization = fields::Normalization::Eigen;
  const radial::State s = h.radial.at(c.L);
  const double w = c.omega();
  const Complex sl = w * specfun::sph_bessel_deriv(specfun::BesselKind::J, 0, w * c.L);
  h.radial.scale(sl * c.L * c.L / s.flux, -s.log_scale);
  res.field = std::move(h);
  return res;
}

}  // namespace hatsim::observables
