// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/fields.hpp"

#include <cmath>
#include <numbers>

#include "hatsim/errors.hpp"
#include "hatsim/parallel.hpp"
#include "hatsim/quadrature.hpp"
#include "hatsim/specfun.hpp"

namespace hatsim::fields {

using radial::State;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResonanceTol = 1e-6;
constexpr double kTruncationTol = 1e-10;

Complex wr(const State& a, const State& b) { return a.u * b.flux - a.flux * b.u; }

double clamp_exp(double x) {
  if (x > 700.0) throw OverflowError("harmonic coefficient overflows");
  return x < -745.0 ? 0.0 : std::exp(x);
}

// s = alpha f + beta g in the basis of region `g` at radius r; both unscaled.
RegionWeights decompose(const RadialProfile& p, const Region& g, int n, const State& s) {
  const radial::BasisPair bp = radial::region_basis(p, g, n, s.r);
  RegionWeights w;
  w.r_a = g.r_a;
  w.r_b = g.r_b;
  w.alpha = wr(s, bp.g) / bp.det * clamp_exp(s.log_scale + bp.g.log_scale);
  w.beta = -wr(s, bp.f) / bp.det * clamp_exp(s.log_scale + bp.f.log_scale);
  return w;
}

// Region and radius where the exterior {j_n, h_n} expansion is read off.
std::pair<std::size_t, double> exterior_probe(const HatConfig& c, const RadialProfile& p) {
  const auto& regs = p.regions();
  if (c.cloak && c.cloak_model == CloakModel::Pushforward) {
    const std::size_t i = p.index_of(c.R());
    return {i, c.R()};
  }
  const std::size_t i = regs.size() - 1;
  return {i, regs[i].r_a > 0.0 ? regs[i].r_a : regs[i].r_b};
}

void fill_regions(HarmonicSolution& h, const HatConfig& c) {
  const RadialProfile& p = h.radial.profile();
  const auto& regs = p.regions();
  h.regions.clear();
  for (std::size_t i = 0; i < regs.size(); ++i) {
    const Region& g = regs[i];
    if (!radial::closed_form(p, g)) continue;
    if (i == 0) {
      // regular branch only
      const State s = h.radial.at(0.5 * g.r_b);
      const State f = radial::regular_state(h.n, radial::local_k(p, g), g.sigma, 0.5 * g.r_b);
      RegionWeights w{g.r_a, g.r_b, 0.0, 0.0};
      const Complex ratio = std::abs(f.u) >= std::abs(f.flux) ? s.u / f.u : s.flux / f.flux;
      w.alpha = ratio * clamp_exp(s.log_scale - f.log_scale);
      h.regions.push_back(w);
      continue;
    }
    h.regions.push_back(decompose(p, g, h.n, h.radial.at(g.r_a)));
  }
  const auto [idx, r] = exterior_probe(c, p);
  const RegionWeights ext = decompose(p, regs[idx], h.n, h.radial.at(r));
  h.b = ext.alpha;
  h.c = ext.beta;
}

radial::RadialSolution regular_solution(const HatConfig& c, int n) {
  auto prof = std::make_shared<const RadialProfile>(material_profile(c));
  return radial::solve_regular(prof, n, radial::Engine::Auto, radial::options_for(c));
}

}  // namespace

const char* normalization_name(Normalization n) {
  switch (n) {
    case Normalization::Dirichlet: return "dirichlet";
    case Normalization::Eigen: return "eigen";
    case Normalization::PlaneWave: return "plane-wave";
    case Normalization::Unit: return "unit";
  }
  return "unit";
}

double HarmonicSolution::max_abs(double r_max, int samples) const {
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) m = std::max(m, std::abs(u(r_max * i / samples)));
  return m;
}

HarmonicSolution solve_dirichlet_radial(const HatConfig& c, Complex h0) {
  c.validate();
  HarmonicSolution h;
  h.n = 0;
  h.radial = regular_solution(c, 0);
  h.normalization = Normalization::Dirichlet;
  const State s = h.radial.at(c.L);
  const double unit = std::max(c.omega(), 1.0) * c.L * c.L;
  if (std::abs(s.u) <= kResonanceTol * std::hypot(std::abs(s.u), std::abs(s.flux) / unit))
    throw ResonanceError("Dirichlet problem is resonant: u(L) of the regular solution vanishes");
  h.radial.scale(h0 / s.u, -s.log_scale);
  fill_regions(h, c);
  return h;
}

HarmonicSolution solve_eigen_radial(const HatConfig& c) {
  c.validate();
  HarmonicSolution h;
  h.n = 0;
  h.radial = regular_solution(c, 0);
  h.normalization = Normalization::Eigen;
  const State s = h.radial.at(c.L);
  const double w = c.omega();
  const Complex slope = w * specfun::sph_bessel_deriv(specfun::BesselKind::J, 0, w * c.L);
  // u'(L) = flux / L^2 with sigma = 1 outside the cloak
  if (s.flux == Complex(0.0)) throw ResonanceError("regular solution has zero slope at L");
  h.radial.scale(slope * c.L * c.L / s.flux, -s.log_scale);
  fill_regions(h, c);
  return h;
}

HarmonicSolution solve_unit_channel(const HatConfig& c, int n) {
  c.validate();
  HarmonicSolution h;
  h.n = n;
  h.radial = regular_solution(c, n);
  h.normalization = Normalization::Unit;
  const RadialProfile& p = h.radial.profile();
  const auto [idx, r] = exterior_probe(c, p);
  const State s = h.radial.at(r);
  const radial::BasisPair bp = radial::region_basis(p, p.regions()[idx], n, r);
  const Complex wsg = wr(s, bp.g);
  if (wsg == Complex(0.0)) throw ResonanceError("interior solution has no incident component");
  h.radial.scale(bp.det / wsg, -s.log_scale - bp.g.log_scale);
  fill_regions(h, c);
  h.b = 1.0;
  h.c = -wr(s, bp.f) / wsg * std::exp(bp.f.log_scale - bp.g.log_scale);
  return h;
}

Complex scattering_coefficient(const HatConfig& c, int n) {
  c.validate();
  const RadialProfile p = material_profile(c);
  const auto [idx, r] = exterior_probe(c, p);
  const State s = radial::regular_state_at(p, n, r, radial::Engine::Auto, radial::options_for(c));
  const radial::BasisPair bp = radial::region_basis(p, p.regions()[idx], n, r);
  return -wr(s, bp.f) / wr(s, bp.g) * std::exp(bp.f.log_scale - bp.g.log_scale);
}

PlaneWaveSolution solve_plane_wave(const HatConfig& c, const Point& d, int workers) {
  c.validate();
  const double dn = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (!(dn > 0.0)) throw DomainError("plane-wave direction must be non-zero");
  PlaneWaveSolution pw;
  pw.direction = {d[0] / dn, d[1] / dn, d[2] / dn};
  pw.harmonics.resize(c.n_max + 1);
  parallel_for(pw.harmonics.size(), workers, [&](std::size_t n) {
    HarmonicSolution h = solve_unit_channel(c, static_cast<int>(n));
    h.weight = std::pow(Complex(0.0, 1.0), static_cast<int>(n)) * (2.0 * n + 1.0);
    h.normalization = Normalization::PlaneWave;
    pw.harmonics[n] = std::move(h);
  });
  const double x = c.omega() * c.L;
  double num = 0.0, den = 0.0;
  for (const HarmonicSolution& h : pw.harmonics) {
    const double w = 2.0 * h.n + 1.0;
    const Complex hn = specfun::sph_bessel(specfun::BesselKind::H1, h.n, x);
    const Complex jn = specfun::sph_bessel(specfun::BesselKind::J, h.n, x);
    num += w * std::norm(h.c * hn);
    den += w * std::norm(jn);
  }
  pw.far_field_residual = std::sqrt(num / den);
  pw.truncation_warning = std::abs(pw.harmonics.back().c) > kTruncationTol;
  return pw;
}

double PhiMode::operator()(double r) const { return phi.u(r).real(); }

PhiMode compute_phi(const HatConfig& c) {
  c.validate();
  auto prof = std::make_shared<const RadialProfile>(interior_profile(c, 1.0));
  PhiMode m;
  m.phi = radial::solve_regular(prof, 0, radial::Engine::Auto, radial::options_for(c), 1.0);
  const double n2 = integrate([&](double r) { return 4.0 * kPi * r * r * std::norm(m.phi.u(r)); }, 0.0, 1.0,
                              c.quad_tol, prof->breakpoints());
  m.norm = std::sqrt(n2);
  double sgn = m.phi.u(1.0).real() < 0.0 ? -1.0 : 1.0;
  m.phi.scale(sgn / m.norm);
  m.phi_at_1 = m.phi.u(1.0).real();
  m.dphi_at_1 = m.phi.du_dr(1.0).real();
  return m;
}

EffectiveField EffectiveField::finite(const HatConfig& c, std::vector<HarmonicSolution> sols, Point d) {
  EffectiveField f;
  f.config_ = c;
  f.solutions_ = std::move(sols);
  f.direction_ = d;
  for (const HarmonicSolution& h : f.solutions_)
    if (h.n == 0) f.u0_ = h.u(0.0);
  return f;
}

EffectiveField EffectiveField::limit(const HatConfig& c, std::vector<HarmonicSolution> empty, PhiMode phi, Point d) {
  EffectiveField f;
  f.config_ = c;
  f.solutions_ = std::move(empty);
  f.direction_ = d;
  f.limit_ = true;
  if (phi.phi_at_1 == 0.0) throw DomainError("Phi(1) = 0: beta undefined");
  f.beta_ = 1.0 / phi.phi_at_1;
  f.phi_ = std::make_shared<PhiMode>(std::move(phi));
  for (const HarmonicSolution& h : f.solutions_)
    if (h.n == 0) f.u0_ = h.u(0.0);
  return f;
}

Complex EffectiveField::radial(std::size_t k, double r, bool weighted) const {
  const HarmonicSolution& h = solutions_.at(k);
  if (r < 0.0 || r > config_.L) throw DomainError("field evaluation outside B_L");
  if (!limit_) {
    const Complex u = h.u(r);
    return weighted ? std::sqrt(cloak_weight(r, config_)) * u : u;
  }
  if (r <= 1.0) return h.n == 0 ? beta_ * u0_ * (*phi_)(r) : Complex(0.0);
  const double y = r > 2.0 ? r : 2.0 * (r - 1.0);
  const Complex u = h.u(y);
  return weighted ? std::sqrt(theta_tilde(r)) * u : u;
}

double EffectiveField::sphere_density(double r) const {
  double s = 0.0;
  for (std::size_t k = 0; k < solutions_.size(); ++k)
    s += 4.0 * kPi / (2.0 * solutions_[k].n + 1.0) * std::norm(radial(k, r));
  return s;
}

Complex EffectiveField::operator()(const Point& x) const {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (r > config_.L * (1.0 + 1e-12)) throw DomainError("field evaluation outside B_L");
  const double rr = std::min(r, config_.L);
  double ct = 1.0;
  if (r > 0.0) ct = std::clamp((x[0] * direction_[0] + x[1] * direction_[1] + x[2] * direction_[2]) / r, -1.0, 1.0);
  int nmax = 0;
  for (const HarmonicSolution& h : solutions_) nmax = std::max(nmax, h.n);
  const std::vector<double> P = specfun::legendre_table(nmax, ct);
  Complex s = 0.0;
  for (std::size_t k = 0; k < solutions_.size(); ++k) s += radial(k, rr) * P[solutions_[k].n];
  return s;
}

std::vector<Complex> EffectiveField::evaluate(const std::vector<Point>& pts, int workers) const {
  std::vector<Complex> out(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i) { out[i] = (*this)(pts[i]); });
  return out;
}

std::vector<double> EffectiveField::breakpoints() const {
  if (limit_) return {0.0, 1.0, 2.0, config_.L};
  return material_profile(config_).breakpoints();
}

std::vector<Complex> effective_field(const std::vector<HarmonicSolution>& sols, const HatConfig& c,
                                     const std::vector<Point>& pts, int workers) {
  return EffectiveField::finite(c, sols).evaluate(pts, workers);
}

}  // namespace hatsim::fields
