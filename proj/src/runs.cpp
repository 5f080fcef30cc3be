// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/runs.hpp"

#include <cmath>
#include <limits>

#include "hatsim/errors.hpp"
#include "hatsim/fields.hpp"
#include "hatsim/hetero.hpp"
#include "hatsim/observables.hpp"
#include "hatsim/parallel.hpp"
#include "hatsim/tuner.hpp"

#ifndef HATSIM_VERSION
#define HATSIM_VERSION "0.0.0"
#endif

namespace hatsim::runs {

namespace {

Table with_header(const RunConfig& c, const char* command, std::vector<std::string> columns) {
  Table t;
  t.add_meta("hatsim", version());
  t.add_meta("command", command);
  t.add_meta("config_hash", hash_hex(config_hash(c)));
  t.columns = std::move(columns);
  return t;
}

tuner::ScanOptions scan_options(const RunConfig& c) {
  tuner::ScanOptions so;
  so.step = c.tune.scan_step;
  so.xtol = c.tune.xtol;
  so.workers = workers(c);
  return so;
}

fields::EffectiveField make_field(const RunConfig& c, Source src) {
  switch (src) {
    case Source::Scatter: {
      fields::PlaneWaveSolution pw = fields::solve_plane_wave(c.hat, {0.0, 0.0, 1.0}, workers(c));
      return fields::EffectiveField::finite(c.hat, std::move(pw.harmonics));
    }
    case Source::Limit: {
      std::vector<fields::HarmonicSolution> empty{observables::s_wave(c.hat.empty(), c.drive)};
      return fields::EffectiveField::limit(c.hat, std::move(empty), fields::compute_phi(c.hat));
    }
    default:
      return observables::s_wave_field(c.hat, c.drive);
  }
}

const char* source_name(Source s) {
  switch (s) {
    case Source::Scatter: return "scatter";
    case Source::Limit: return "limit";
    default: return "eigen";
  }
}

int axis_index(char a) {
  switch (a) {
    case 'x': return 0;
    case 'y': return 1;
    case 'z': return 2;
    default: throw ValidationError(std::string("axis must be x, y or z, got '") + a + "'");
  }
}

void field_rows(Table& t, const fields::EffectiveField& f, const std::vector<fields::Point>& pts,
                const std::vector<std::vector<Cell>>& lead, int w) {
  const double L = f.outer_radius();
  std::vector<Complex> vals(pts.size(), Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));
  std::vector<std::size_t> inside;
  std::vector<fields::Point> ipts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = std::sqrt(pts[i][0] * pts[i][0] + pts[i][1] * pts[i][1] + pts[i][2] * pts[i][2]);
    if (r <= L) {
      inside.push_back(i);
      ipts.push_back(pts[i]);
    }
  }
  const std::vector<Complex> got = f.evaluate(ipts, w);
  for (std::size_t k = 0; k < inside.size(); ++k) vals[inside[k]] = got[k];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Cell> row = lead[i];
    const bool ok = !std::isnan(vals[i].real());
    row.push_back(ok ? vals[i].real() : nan);
    row.push_back(ok ? vals[i].imag() : nan);
    row.push_back(ok ? std::abs(vals[i]) : nan);
    t.add_row(std::move(row));
  }
}

}  // namespace

const char* version() { return HATSIM_VERSION; }

int workers(const RunConfig& c) { return resolve_workers(c.workers > 0 ? c.workers : 1); }

Table tune(const RunConfig& c, const std::vector<double>& extra) {
  Table t = with_header(c, "tune", {"mode", "tau1", "residual", "interior_amplitude"});
  const tuner::ScanOptions so = scan_options(c);
  const double sh = tuner::find_tau1_sh(c.hat, c.tune.bracket, so);
  t.add_meta("tau1_sh", sh);
  std::vector<double> taus{sh};
  try {
    const double res = tuner::find_tau1_resonance(c.hat, c.tune.bracket, so, c.tune.rule);
    t.add_meta("tau1_res", res);
    taus.push_back(res);
  } catch (const NoRootError&) {
    t.add_meta("tau1_res", "none");
  }
  taus.insert(taus.end(), extra.begin(), extra.end());
  for (double tau : taus) {
    const tuner::ModeReport r = tuner::classify_mode(tau, c.hat, c.tune.thresholds);
    t.add_row({std::string(tuner::mode_name(r.mode)), tau, r.far_field_residual, r.interior_amplitude});
  }
  return t;
}

Table probabilities(const RunConfig& c) {
  Table t = with_header(c, "probs", {"region", "ball", "mass", "total", "probability"});
  const double L = c.hat.L;
  std::vector<observables::RegionSpec> regions{{"core", {0.0, 1.0}}};
  const double r2 = std::min(c.game.region.r2, L);
  if (c.game.region.r1 < r2) regions.push_back({"A", {c.game.region.r1, r2}});
  regions.push_back({"B", {2.0, L}});
  for (const auto& r : observables::probabilities(c.hat.empty(), c.hat, regions, c.drive))
    t.add_row({r.region, r.ball, r.mass, r.total, r.probability});
  return t;
}

Table eigen_field(const RunConfig& c, Ball ball, int points) {
  if (points < 2) throw ValidationError("need at least two points");
  Table t = with_header(c, "eigen", {"r", "re", "im", "abs"});
  t.add_meta("ball", ball == Ball::Sh ? "sh" : "empty");
  const HatConfig hc = ball == Ball::Sh ? c.hat : c.hat.empty();
  const fields::EffectiveField f = observables::s_wave_field(hc, c.drive);
  for (int i = 0; i < points; ++i) {
    const double r = hc.L * i / (points - 1);
    const Complex u = f.radial(0, r);
    t.add_row({r, u.real(), u.imag(), std::abs(u)});
  }
  return t;
}

Table scatter(const RunConfig& c) {
  Table t = with_header(c, "scatter", {"n", "re_c", "im_c", "abs_c"});
  const fields::PlaneWaveSolution pw = fields::solve_plane_wave(c.hat, {0.0, 0.0, 1.0}, workers(c));
  t.add_meta("far_field_residual", pw.far_field_residual);
  t.add_meta("truncation_warning", pw.truncation_warning ? "true" : "false");
  for (const auto& h : pw.harmonics) t.add_row({static_cast<double>(h.n), h.c.real(), h.c.imag(), std::abs(h.c)});
  return t;
}

Table field_plane(const RunConfig& c, Source src, char normal, double offset, int grid, double extent) {
  if (grid < 2) throw ValidationError("grid must be at least 2");
  const int k = axis_index(normal);
  const double ext = extent > 0.0 ? extent : c.hat.L;
  Table t = with_header(c, "field-dump", {"x", "y", "re", "im", "abs"});
  t.add_meta("source", source_name(src));
  t.add_meta("plane", std::string(1, normal) + "=" + format_number(offset));
  const int a = (k + 1) % 3, b = (k + 2) % 3;
  // in-plane coordinates: (x, y) for z=, (y, z) for x=, (z, x) for y=
  std::vector<fields::Point> pts;
  std::vector<std::vector<Cell>> lead;
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) {
      const double u = -ext + 2.0 * ext * i / (grid - 1), v = -ext + 2.0 * ext * j / (grid - 1);
      fields::Point p{};
      p[static_cast<std::size_t>(k)] = offset;
      p[static_cast<std::size_t>(a)] = u;
      p[static_cast<std::size_t>(b)] = v;
      pts.push_back(p);
      lead.push_back({u, v});
    }
  field_rows(t, make_field(c, src), pts, lead, workers(c));
  return t;
}

Table field_axis(const RunConfig& c, Source src, char axis, int grid) {
  if (grid < 2) throw ValidationError("grid must be at least 2");
  const int k = axis_index(axis);
  Table t = with_header(c, "field-dump", {"r", "re", "im", "abs"});
  t.add_meta("source", source_name(src));
  t.add_meta("axis", std::string(1, axis));
  const double L = c.hat.L;
  std::vector<fields::Point> pts;
  std::vector<std::vector<Cell>> lead;
  for (int i = 0; i < grid; ++i) {
    const double s = -L + 2.0 * L * i / (grid - 1);
    fields::Point p{};
    p[static_cast<std::size_t>(k)] = s;
    pts.push_back(p);
    lead.push_back({s});
  }
  field_rows(t, make_field(c, src), pts, lead, workers(c));
  return t;
}

Table monte(const RunConfig& c) {
  Table t = with_header(c, "monte", {"quantity", "value"});
  const observables::MonteReport r = observables::monte_game(c.game, c.hat.empty(), c.hat, c.drive);
  t.add_row({std::string("mass_A_empty"), r.a_em});
  t.add_row({std::string("mass_total_empty"), r.c_em});
  t.add_row({std::string("mu_A_empty"), r.mu_em});
  t.add_row({std::string("mass_A_sh"), r.a_sh});
  t.add_row({std::string("mass_total_sh"), r.c_sh});
  t.add_row({std::string("mu_A_sh"), r.mu_sh});
  t.add_row({std::string("p_choice"), r.p});
  t.add_row({std::string("bob_profit"), r.bob_profit});
  t.add_row({std::string("strength"), observables::strength(c.hat)});
  return t;
}

Table interact(const RunConfig& c) {
  Table t = with_header(c, "interact", {"quantity", "value"});
  observables::CoulombOptions opts;
  opts.table_cells = c.interact.table_cells;
  const double e1_empty = observables::perturbation_e1(
      observables::field_density(observables::s_wave_field(c.hat.empty(), observables::Drive::Eigen)),
      opts.table_cells);
  const fields::EffectiveField f = observables::s_wave_field(c.hat, observables::Drive::Eigen);
  const double q = observables::charge_qprime(f, c.hat.quad_tol);
  const observables::CoulombResult r = observables::solve_with_coulomb(c.hat, c.interact.a, opts);
  t.add_row({std::string("E1"), r.E1});
  t.add_row({std::string("E1_empty"), e1_empty});
  t.add_row({std::string("E1_ratio"), r.E1 / e1_empty});
  t.add_row({std::string("Qprime"), q});
  t.add_row({std::string("a"), r.a});
  t.add_row({std::string("E_eff"), r.E_eff});
  if (r.a != 0.0) {
    const double slope = (r.E_eff - c.hat.E) / r.a;
    t.add_row({std::string("slope"), slope});
    t.add_row({std::string("slope_over_2E1"), slope / (2.0 * r.E1)});
  }
  return t;
}

Table veff(const RunConfig& c, int points) {
  if (points < 2) throw ValidationError("need at least two points");
  Table t = with_header(c, "interact", {"r", "V_eff"});
  const observables::CoulombTable v(
      observables::field_density(observables::s_wave_field(c.hat, observables::Drive::Eigen), c.hat.quad_tol),
      c.interact.table_cells);
  t.add_meta("E1", v.e1());
  for (int i = 0; i < points; ++i) {
    const double r = c.hat.L * i / (points - 1);
    t.add_row({r, v(r)});
  }
  return t;
}

Table hetero(const RunConfig& c) {
  const HeteroSettings& h = c.hetero;
  Table t = with_header(c, "hetero", {"kind", "size", "layers", "outer", "re_dtn", "im_dtn", "error"});
  const hetero::HatPotential p = hetero::scale_hat(hetero::hat_potential(c.hat), h.ell);
  const double r_out = h.r_out > 0.0 ? h.r_out : 2.0 * h.ell;
  const double m0 = h.materials.m0;
  const Complex ref = hetero::potential_dtn(p, m0, p.E, r_out);
  t.add_meta("E_ell", p.E);
  t.add_meta("r_out", r_out);
  t.add_meta("reference_dtn", format_number(ref.real()) + (ref.imag() < 0 ? "" : "+") + format_number(ref.imag()) + "i");
  const hetero::ThermalWindow tw = hetero::thermal_window(h.e_c, h.temperature, h.k_b);
  t.add_meta("E_av", tw.mean);
  t.add_meta("E_variance", tw.variance);
  if (tw.mean > 0.0) t.add_meta("ell_for_E_av", std::sqrt(c.hat.E / tw.mean));
  const std::size_t nJ = h.J.size();
  std::vector<std::vector<Cell>> rows(nJ);
  parallel_for(nJ, workers(c), [&](std::size_t i) {
    const hetero::LayerStack s = hetero::design_stack(p, h.materials, h.J[i]);
    const Complex d = hetero::bdd_dtn(s, h.materials, p.E, std::max(r_out, s.outer()));
    rows[i] = {std::string("stack"), static_cast<double>(h.J[i]), static_cast<double>(s.layers.size()), s.outer(),
               d.real(), d.imag(), std::abs(d - ref)};
  });
  for (auto& r : rows) t.add_row(std::move(r));
  const double vp = h.v_plus > 0.0 ? h.v_plus : h.materials.v_max();
  const double vm = h.v_minus > 0.0 ? h.v_minus : -h.materials.v_min();
  for (int k = 0; k < 3; ++k) {
    const int n = h.quantize_cells << k;
    const auto layers = hetero::quantize_two_level(p, n, vp, vm, c.hat.quad_tol);
    const Complex d = hetero::layered_dtn(layers, m0, p.E, r_out);
    t.add_row({std::string("two-level"), static_cast<double>(n), static_cast<double>(layers.size()),
               layers.back().r_outer, d.real(), d.imag(), std::abs(d - ref)});
  }
  return t;
}

Table stack(const RunConfig& c, int J) {
  const HeteroSettings& h = c.hetero;
  Table t = with_header(c, "hetero", {"material_index", "r_inner", "r_outer", "m", "V"});
  t.add_meta("units", "hbar^2 = 2, m relative to m0, lengths scaled by ell");
  t.add_meta("J", static_cast<double>(J));
  const hetero::HatPotential p = hetero::scale_hat(hetero::hat_potential(c.hat), h.ell);
  const hetero::LayerStack s = hetero::design_stack(p, h.materials, J);
  for (const hetero::Layer& l : s.layers) {
    const hetero::Material& m = h.materials.entries[static_cast<std::size_t>(l.material - 1)];
    t.add_row({static_cast<double>(l.material), l.r_inner, l.r_outer, m.m, m.V});
  }
  return t;
}

Table ratios(const RunConfig& c, int points) {
  if (points < 2) throw ValidationError("need at least two points");
  const HeteroSettings& h = c.hetero;
  Table t = with_header(c, "hetero", {"r", "V", "l1", "l2", "l3", "l4"});
  const hetero::HatPotential p = hetero::scale_hat(hetero::hat_potential(c.hat), h.ell);
  for (int i = 0; i < points; ++i) {
    const double r = p.support * i / points;
    const double v = p.V(r);
    const hetero::Ratios l = hetero::layer_ratios(h.materials.m0, v, h.materials);
    t.add_row({r, v, l[0], l[1], l[2], l[3]});
  }
  return t;
}

}  // namespace hatsim::runs
