// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/hatsim.h"

#include <cstdlib>
#include <cstring>
#include <deque>
#include <new>
#include <string>

#include "hatsim/config.hpp"
#include "hatsim/errors.hpp"
#include "hatsim/observables.hpp"
#include "hatsim/runs.hpp"
#include "hatsim/specfun.hpp"
#include "hatsim/tuner.hpp"

struct hatsim_config {
  hatsim::RunConfig c;
};

struct hatsim_table {
  hatsim::Table t;
  std::deque<std::string> text;  // stable storage for returned strings
};

namespace {

thread_local std::string g_error;
thread_local int g_line = 0;

int fail(int status, const char* what) {
  g_error = what;
  return status;
}

template <class F>
int guard(F&& f) {
  try {
    g_line = 0;
    f();
    return HATSIM_OK;
  } catch (const hatsim::ParseError& e) {
    g_line = e.line();
    return fail(HATSIM_E_PARSE, e.what());
  } catch (const hatsim::Error& e) {
    return fail(1 + static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HATSIM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HATSIM_E_INTERNAL, e.what());
  } catch (...) {
    return fail(HATSIM_E_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
int make_table(const hatsim_config* c, hatsim_table** out, F&& f) {
  if (!c || !out) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] { *out = new hatsim_table{f(c->c), {}}; });
}

hatsim::runs::Source to_source(int s) {
  switch (s) {
    case HATSIM_SOURCE_SCATTER: return hatsim::runs::Source::Scatter;
    case HATSIM_SOURCE_EIGEN: return hatsim::runs::Source::Eigen;
    case HATSIM_SOURCE_LIMIT: return hatsim::runs::Source::Limit;
    default: throw hatsim::ValidationError("unknown field source");
  }
}

}  // namespace

extern "C" {

const char* hatsim_version(void) { return hatsim::runs::version(); }
const char* hatsim_last_error(void) { return g_error.c_str(); }
int hatsim_last_error_line(void) { return g_line; }

const char* hatsim_status_name(int status) {
  if (status == HATSIM_OK) return "ok";
  if (status >= 1 && status <= HATSIM_E_INFEASIBLE)
    return hatsim::error_code_name(static_cast<hatsim::ErrorCode>(status - 1));
  if (status == HATSIM_E_INVALID_ARGUMENT) return "invalid-argument";
  return "internal";
}

int hatsim_exit_code(int status) {
  switch (status) {
    case HATSIM_OK: return 0;
    case HATSIM_E_CONFIG:
    case HATSIM_E_PARSE:
    case HATSIM_E_VALIDATION:
    case HATSIM_E_INFEASIBLE:
    case HATSIM_E_INVALID_ARGUMENT: return 2;
    case HATSIM_E_NO_ROOT: return 4;
    default: return 3;
  }
}

int hatsim_config_load(const char* path, hatsim_config** out) {
  if (!path || !out) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] { *out = new hatsim_config{hatsim::parse_config(path)}; });
}

int hatsim_config_parse(const char* text, hatsim_config** out) {
  if (!text || !out) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] { *out = new hatsim_config{hatsim::parse_config_text(text)}; });
}

void hatsim_config_free(hatsim_config* c) { delete c; }

int hatsim_config_set_tau1(hatsim_config* c, double tau1) {
  if (!c) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    hatsim::RunConfig next = c->c;
    next.hat = next.hat.with_tau1(tau1);
    hatsim::validate(next);
    c->c = next;
  });
}

int hatsim_config_set_workers(hatsim_config* c, int workers) {
  if (!c) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  if (workers < 0) return fail(HATSIM_E_INVALID_ARGUMENT, "workers must be >= 0");
  c->c.workers = workers;
  return HATSIM_OK;
}

int hatsim_config_get(const hatsim_config* c, const char* name, double* out) {
  if (!c || !name || !out) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  const hatsim::HatConfig& h = c->c.hat;
  const std::string n = name;
  if (n == "rho") *out = h.rho;
  else if (n == "L") *out = h.L;
  else if (n == "E") *out = h.E;
  else if (n == "R0") *out = h.R0();
  else if (n == "tau1") *out = h.shells.empty() ? 0.0 : h.shells.front().tau;
  else if (n == "n_max") *out = h.n_max;
  else if (n == "workers") *out = c->c.workers;
  else if (n == "shells") *out = static_cast<double>(h.shells.size());
  else return fail(HATSIM_E_INVALID_ARGUMENT, "unknown config field");
  return HATSIM_OK;
}

const char* hatsim_config_output(const hatsim_config* c) { return c ? c->c.output.c_str() : ""; }

int hatsim_config_to_ini(const hatsim_config* c, char** out) {
  if (!c || !out) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] { *out = dup(hatsim::to_ini(c->c)); });
}

uint64_t hatsim_config_hash(const hatsim_config* c) { return c ? hatsim::config_hash(c->c) : 0; }

void hatsim_string_free(char* s) { std::free(s); }

int hatsim_sph_bessel(int kind, int n, double re, double im, double* out_re, double* out_im) {
  if (!out_re || !out_im) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  if (kind < HATSIM_BESSEL_J || kind > HATSIM_BESSEL_H1) return fail(HATSIM_E_INVALID_ARGUMENT, "unknown kind");
  return guard([&] {
    const hatsim::Complex v =
        hatsim::specfun::sph_bessel(static_cast<hatsim::specfun::BesselKind>(kind), n, hatsim::Complex(re, im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

int hatsim_find_tau1_sh(const hatsim_config* c, double* tau1) {
  if (!c || !tau1) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    hatsim::tuner::ScanOptions so;
    so.step = c->c.tune.scan_step;
    so.xtol = c->c.tune.xtol;
    so.workers = hatsim::runs::workers(c->c);
    *tau1 = hatsim::tuner::find_tau1_sh(c->c.hat, c->c.tune.bracket, so);
  });
}

int hatsim_find_tau1_resonance(const hatsim_config* c, double* tau1) {
  if (!c || !tau1) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    hatsim::tuner::ScanOptions so;
    so.step = c->c.tune.scan_step;
    so.xtol = c->c.tune.xtol;
    so.workers = hatsim::runs::workers(c->c);
    *tau1 = hatsim::tuner::find_tau1_resonance(c->c.hat, c->c.tune.bracket, so, c->c.tune.rule);
  });
}

int hatsim_classify(const hatsim_config* c, double tau1, int* mode, double* amplitude, double* residual) {
  if (!c || !mode) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] {
    const hatsim::tuner::ModeReport r = hatsim::tuner::classify_mode(tau1, c->c.hat, c->c.tune.thresholds);
    *mode = static_cast<int>(r.mode);
    if (amplitude) *amplitude = r.interior_amplitude;
    if (residual) *residual = r.far_field_residual;
  });
}

int hatsim_e1_uniform_ball(double delta, int cells, double* e1) {
  if (!e1) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] { *e1 = hatsim::observables::perturbation_e1(hatsim::observables::uniform_ball(delta), cells); });
}

int hatsim_run_tune(const hatsim_config* c, const double* extra, size_t n, hatsim_table** out) {
  if (n > 0 && !extra) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return make_table(c, out, [&](const hatsim::RunConfig& rc) {
    return hatsim::runs::tune(rc, std::vector<double>(extra, extra + n));
  });
}

int hatsim_run_probs(const hatsim_config* c, hatsim_table** out) {
  return make_table(c, out, [](const hatsim::RunConfig& rc) { return hatsim::runs::probabilities(rc); });
}

int hatsim_run_eigen_field(const hatsim_config* c, int empty_ball, int points, hatsim_table** out) {
  return make_table(c, out, [&](const hatsim::RunConfig& rc) {
    return hatsim::runs::eigen_field(rc, empty_ball ? hatsim::runs::Ball::Empty : hatsim::runs::Ball::Sh, points);
  });
}

int hatsim_run_scatter(const hatsim_config* c, hatsim_table** out) {
  return make_table(c, out, [](const hatsim::RunConfig& rc) { return hatsim::runs::scatter(rc); });
}

int hatsim_run_field_plane(const hatsim_config* c, int source, char normal, double offset, int grid, double extent,
                           hatsim_table** out) {
  return make_table(c, out, [&](const hatsim::RunConfig& rc) {
    return hatsim::runs::field_plane(rc, to_source(source), normal, offset, grid, extent);
  });
}

int hatsim_run_field_axis(const hatsim_config* c, int source, char axis, int grid, hatsim_table** out) {
  return make_table(c, out, [&](const hatsim::RunConfig& rc) {
    return hatsim::runs::field_axis(rc, to_source(source), axis, grid);
  });
}

int hatsim_run_monte(const hatsim_config* c, hatsim_table** out) {
  return make_table(c, out, [](const hatsim::RunConfig& rc) { return hatsim::runs::monte(rc); });
}

int hatsim_run_interact(const hatsim_config* c, hatsim_table** out) {
  return make_table(c, out, [](const hatsim::RunConfig& rc) { return hatsim::runs::interact(rc); });
}

int hatsim_run_veff(const hatsim_config* c, int points, hatsim_table** out) {
  return make_table(c, out, [&](const hatsim::RunConfig& rc) { return hatsim::runs::veff(rc, points); });
}

int hatsim_run_hetero(const hatsim_config* c, hatsim_table** out) {
  return make_table(c, out, [](const hatsim::RunConfig& rc) { return hatsim::runs::hetero(rc); });
}

int hatsim_run_stack(const hatsim_config* c, int J, hatsim_table** out) {
  return make_table(c, out, [&](const hatsim::RunConfig& rc) { return hatsim::runs::stack(rc, J); });
}

int hatsim_run_ratios(const hatsim_config* c, int points, hatsim_table** out) {
  return make_table(c, out, [&](const hatsim::RunConfig& rc) { return hatsim::runs::ratios(rc, points); });
}

size_t hatsim_table_rows(const hatsim_table* t) { return t ? t->t.rows.size() : 0; }
size_t hatsim_table_cols(const hatsim_table* t) { return t ? t->t.columns.size() : 0; }

const char* hatsim_table_column(const hatsim_table* t, size_t col) {
  if (!t || col >= t->t.columns.size()) return nullptr;
  return t->t.columns[col].c_str();
}

int hatsim_table_number(const hatsim_table* t, size_t row, size_t col, double* out) {
  if (!t || !out || row >= t->t.rows.size() || col >= t->t.columns.size())
    return fail(HATSIM_E_INVALID_ARGUMENT, "cell index out of range");
  const double* d = std::get_if<double>(&t->t.rows[row][col]);
  if (!d) return fail(HATSIM_E_INVALID_ARGUMENT, "cell holds text");
  *out = *d;
  return HATSIM_OK;
}

const char* hatsim_table_text(const hatsim_table* t, size_t row, size_t col) {
  if (!t || row >= t->t.rows.size() || col >= t->t.columns.size()) return nullptr;
  auto* mt = const_cast<hatsim_table*>(t);
  const hatsim::Cell& cell = t->t.rows[row][col];
  if (const double* d = std::get_if<double>(&cell)) mt->text.push_back(hatsim::format_number(*d));
  else mt->text.push_back(std::get<std::string>(cell));
  return mt->text.back().c_str();
}

const char* hatsim_table_meta(const hatsim_table* t, const char* key) {
  if (!t || !key) return nullptr;
  for (const auto& [k, v] : t->t.meta)
    if (k == key) return v.c_str();
  return nullptr;
}

int hatsim_table_csv(const hatsim_table* t, char** out) {
  if (!t || !out) return fail(HATSIM_E_INVALID_ARGUMENT, "null argument");
  return guard([&] { *out = dup(t->t.to_csv()); });
}

void hatsim_table_free(hatsim_table* t) { delete t; }

}  // extern "C"
