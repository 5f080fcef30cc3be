// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hatsim/hatsim.h"

namespace {

// Thrown with a hatsim status after the error line has been printed.
struct Failure {
  int status;
};

void check(int status) {
  if (status == HATSIM_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", hatsim_status_name(status), hatsim_last_error());
  throw Failure{status};
}

using ConfigPtr = std::unique_ptr<hatsim_config, decltype(&hatsim_config_free)>;
using TablePtr = std::unique_ptr<hatsim_table, decltype(&hatsim_table_free)>;

struct Common {
  std::string config;
  std::string out;
  int workers = -1;
  std::optional<double> tau1;
};

ConfigPtr load(const Common& o) {
  hatsim_config* c = nullptr;
  check(hatsim_config_load(o.config.c_str(), &c));
  ConfigPtr p(c, hatsim_config_free);
  if (o.tau1) check(hatsim_config_set_tau1(c, *o.tau1));
  if (o.workers >= 0) check(hatsim_config_set_workers(c, o.workers));
  return p;
}

TablePtr take(hatsim_table* t) { return TablePtr(t, hatsim_table_free); }

std::string csv(const hatsim_table* t) {
  char* s = nullptr;
  check(hatsim_table_csv(t, &s));
  std::string out(s);
  hatsim_string_free(s);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: io: cannot write %s\n", path.c_str());
    throw Failure{HATSIM_E_CONFIG};
  }
  f << text;
}

// --out wins; otherwise <output dir>/<name>.csv when the config sets one; else stdout.
void emit(const hatsim_config* c, const Common& o, const char* name, const hatsim_table* t) {
  const std::string text = csv(t);
  const std::string dir = hatsim_config_output(c);
  if (!o.out.empty()) write_file(o.out, text);
  else if (!dir.empty()) write_file((std::filesystem::path(dir) / (std::string(name) + ".csv")).string(), text);
  else std::fwrite(text.data(), 1, text.size(), stdout);
}

int parse_source(const std::string& s) {
  if (s == "scatter") return HATSIM_SOURCE_SCATTER;
  if (s == "eigen") return HATSIM_SOURCE_EIGEN;
  return HATSIM_SOURCE_LIMIT;
}

// "z=0.5" -> ('z', 0.5)
std::pair<char, double> parse_plane(const std::string& s) {
  if (s.size() < 3 || s[1] != '=' || (s[0] != 'x' && s[0] != 'y' && s[0] != 'z')) {
    std::fprintf(stderr, "error: invalid-argument: plane must look like z=0, got '%s'\n", s.c_str());
    throw Failure{HATSIM_E_INVALID_ARGUMENT};
  }
  try {
    return {s[0], std::stod(s.substr(2))};
  } catch (const std::exception&) {
    std::fprintf(stderr, "error: invalid-argument: bad plane offset in '%s'\n", s.c_str());
    throw Failure{HATSIM_E_INVALID_ARGUMENT};
  }
}

void add_common(CLI::App* sub, Common& o) {
  sub->add_option("config", o.config, "INI run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--out,-o", o.out, "write CSV here instead of stdout");
  sub->add_option("--workers", o.workers, "worker threads (HATSIM_WORKERS overrides)")->check(CLI::NonNegativeNumber);
  sub->add_option("--tau1", o.tau1, "override tau1 of the innermost shell");
}

const char* kConfigHelp = R"(Config sections and defaults:
  [cloak]    rho = 0.01, L = 2pi, E (required), n_max = 30, ode_tol = 1e-10, quad_tol = 1e-10,
             enabled = true, model = pushforward | printed
  [shells]   s1, tau1, s2, tau2, ... (tau1 may be omitted), convention = additive | multiplicative
  [run]      workers = 0, output = <dir>, bracket_lo = -500, bracket_hi = 500, scan_step = 0.25,
             xtol = 1e-6, resonance_rule = pole | dirichlet, hat_tol = 1e-3, amp_threshold = 1,
             drive = auto | eigen | dirichlet
  [game]     n_balls = 3, r1 = 3, r2 = 2pi
  [interact] a = 1e-3, table_cells = 4000
  [hetero]   ell = 10, m0 = 1, m1..m4 = 0.5 1 1 2, V1..V4 = 0 -0.1 0.3 0, J = 8,16,32,64,
             r_out = 2 ell, quantize_cells = 32, v_plus, v_minus (band edges), E_c = 0, T = 0, k_B = 1
Exit codes: 0 ok, 2 config, 3 numerical, 4 no root.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hatsim: cloaks and Schrodinger hats by partial waves"};
  app.footer(kConfigHelp);
  app.set_version_flag("--version", std::string("hatsim ") + hatsim_version());
  app.require_subcommand(1);

  std::function<void()> action;

  Common tune_o;
  std::vector<double> classify;
  auto* tune = app.add_subcommand("tune", "find tau1 for the hat and the resonance, classify modes");
  add_common(tune, tune_o);
  tune->add_option("--classify", classify, "extra tau1 values to classify");
  tune->callback([&] {
    action = [&] {
      ConfigPtr c = load(tune_o);
      hatsim_table* t = nullptr;
      check(hatsim_run_tune(c.get(), classify.data(), classify.size(), &t));
      TablePtr tp = take(t);
      std::printf("tau1_sh=%s\n", hatsim_table_meta(t, "tau1_sh"));
      std::printf("tau1_res=%s\n", hatsim_table_meta(t, "tau1_res"));
      for (std::size_t i = 0; i < hatsim_table_rows(t); ++i)
        std::printf("mode=%s tau1=%s residual=%s interior_amplitude=%s\n", hatsim_table_text(t, i, 0),
                    hatsim_table_text(t, i, 1), hatsim_table_text(t, i, 2), hatsim_table_text(t, i, 3));
      if (!tune_o.out.empty()) write_file(tune_o.out, csv(t));
    };
  });

  Common eigen_o;
  std::string field_path, ball = "sh";
  int points = 1001;
  auto* eigen = app.add_subcommand("eigen", "s-wave eigenfield and probability table");
  add_common(eigen, eigen_o);
  eigen->add_option("--field", field_path, "also write r,re,im,abs of the field here");
  eigen->add_option("--ball", ball, "ball for --field")->check(CLI::IsMember({"sh", "empty"}));
  eigen->add_option("--points", points, "radial samples for --field")->check(CLI::Range(2, 10000000));
  eigen->callback([&] {
    action = [&] {
      ConfigPtr c = load(eigen_o);
      hatsim_table* t = nullptr;
      check(hatsim_run_probs(c.get(), &t));
      TablePtr tp = take(t);
      emit(c.get(), eigen_o, "eigen", t);
      if (!field_path.empty()) {
        hatsim_table* f = nullptr;
        check(hatsim_run_eigen_field(c.get(), ball == "empty", points, &f));
        TablePtr fp = take(f);
        write_file(field_path, csv(f));
      }
    };
  });

  Common probs_o;
  auto* probs = app.add_subcommand("probs", "region probabilities for the empty and the hat ball");
  add_common(probs, probs_o);
  probs->callback([&] {
    action = [&] {
      ConfigPtr c = load(probs_o);
      hatsim_table* t = nullptr;
      check(hatsim_run_probs(c.get(), &t));
      TablePtr tp = take(t);
      emit(c.get(), probs_o, "probs", t);
    };
  });

  Common scat_o;
  std::string scat_plane, scat_axis;
  int scat_grid = 201;
  double scat_extent = 0.0;
  auto* scatter = app.add_subcommand("scatter", "plane-wave scattering: coefficients or field grid");
  add_common(scatter, scat_o);
  auto* sp = scatter->add_option("--plane", scat_plane, "field grid on a plane, e.g. z=0");
  scatter->add_option("--axis", scat_axis, "field along an axis")->check(CLI::IsMember({"x", "y", "z"}))->excludes(sp);
  scatter->add_option("--grid", scat_grid, "points per side")->check(CLI::Range(2, 100000));
  scatter->add_option("--extent", scat_extent, "half width of the plane grid (default L)");
  scatter->callback([&] {
    action = [&] {
      ConfigPtr c = load(scat_o);
      hatsim_table* t = nullptr;
      if (!scat_plane.empty()) {
        const auto [n, off] = parse_plane(scat_plane);
        check(hatsim_run_field_plane(c.get(), HATSIM_SOURCE_SCATTER, n, off, scat_grid, scat_extent, &t));
      } else if (!scat_axis.empty()) {
        check(hatsim_run_field_axis(c.get(), HATSIM_SOURCE_SCATTER, scat_axis[0], scat_grid, &t));
      } else {
        check(hatsim_run_scatter(c.get(), &t));
        std::fprintf(stderr, "far_field_residual=%s truncation_warning=%s\n",
                     hatsim_table_meta(t, "far_field_residual"), hatsim_table_meta(t, "truncation_warning"));
      }
      TablePtr tp = take(t);
      emit(c.get(), scat_o, "scatter", t);
    };
  });

  Common dump_o;
  std::string dump_plane, dump_axis, source = "eigen";
  int dump_grid = 201;
  double dump_extent = 0.0;
  auto* dump = app.add_subcommand("field-dump", "field grids on a plane or an axis");
  add_common(dump, dump_o);
  auto* dp = dump->add_option("--plane", dump_plane, "plane, e.g. z=0");
  auto* da = dump->add_option("--axis", dump_axis, "axis through the origin")
                 ->check(CLI::IsMember({"x", "y", "z"}))
                 ->excludes(dp);
  dump->add_option("--source", source, "field to sample")->check(CLI::IsMember({"scatter", "eigen", "limit"}));
  dump->add_option("--grid", dump_grid, "points per side")->check(CLI::Range(2, 100000));
  dump->add_option("--extent", dump_extent, "half width of the plane grid (default L)");
  dump->callback([&] {
    action = [&] {
      if (dump_plane.empty() && dump_axis.empty()) {
        std::fprintf(stderr, "error: invalid-argument: field-dump needs --plane or --axis\n");
        throw Failure{HATSIM_E_INVALID_ARGUMENT};
      }
      ConfigPtr c = load(dump_o);
      hatsim_table* t = nullptr;
      if (!dump_plane.empty()) {
        const auto [n, off] = parse_plane(dump_plane);
        check(hatsim_run_field_plane(c.get(), parse_source(source), n, off, dump_grid, dump_extent, &t));
      } else {
        check(hatsim_run_field_axis(c.get(), parse_source(source), dump_axis[0], dump_grid, &t));
      }
      TablePtr tp = take(t);
      emit(c.get(), dump_o, "field", t);
    };
  });
  (void)da;

  Common monte_o;
  auto* monte = app.add_subcommand("monte", "three-ball game expectations");
  add_common(monte, monte_o);
  monte->callback([&] {
    action = [&] {
      ConfigPtr c = load(monte_o);
      hatsim_table* t = nullptr;
      check(hatsim_run_monte(c.get(), &t));
      TablePtr tp = take(t);
      emit(c.get(), monte_o, "monte", t);
    };
  });

  Common inter_o;
  std::string veff_path;
  int veff_points = 401;
  auto* inter = app.add_subcommand("interact", "Coulomb self-interaction: V_eff, E1, Q', eigenvalue slope");
  add_common(inter, inter_o);
  inter->add_option("--veff", veff_path, "also write r,V_eff here");
  inter->add_option("--points", veff_points, "samples for --veff")->check(CLI::Range(2, 10000000));
  inter->callback([&] {
    action = [&] {
      ConfigPtr c = load(inter_o);
      hatsim_table* t = nullptr;
      check(hatsim_run_interact(c.get(), &t));
      TablePtr tp = take(t);
      emit(c.get(), inter_o, "interact", t);
      if (!veff_path.empty()) {
        hatsim_table* v = nullptr;
        check(hatsim_run_veff(c.get(), veff_points, &v));
        TablePtr vp = take(v);
        write_file(veff_path, csv(v));
      }
    };
  });

  Common het_o;
  std::string stack_path, ratios_path;
  int stack_J = 16, ratio_points = 200;
  auto* het = app.add_subcommand("hetero", "layered realization: convergence table, stack, ratios");
  add_common(het, het_o);
  het->add_option("--stack", stack_path, "write the layer stack for --J here");
  het->add_option("--J", stack_J, "cycles for --stack")->check(CLI::PositiveNumber);
  het->add_option("--ratios", ratios_path, "write mixing ratios along r here");
  het->add_option("--points", ratio_points, "samples for --ratios")->check(CLI::Range(2, 10000000));
  het->callback([&] {
    action = [&] {
      ConfigPtr c = load(het_o);
      hatsim_table* t = nullptr;
      check(hatsim_run_hetero(c.get(), &t));
      TablePtr tp = take(t);
      emit(c.get(), het_o, "hetero", t);
      if (!stack_path.empty()) {
        hatsim_table* s = nullptr;
        check(hatsim_run_stack(c.get(), stack_J, &s));
        TablePtr sp2 = take(s);
        write_file(stack_path, csv(s));
      }
      if (!ratios_path.empty()) {
        hatsim_table* r = nullptr;
        check(hatsim_run_ratios(c.get(), ratio_points, &r));
        TablePtr rp = take(r);
        write_file(ratios_path, csv(r));
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (action) action();
  } catch (const Failure& f) {
    return hatsim_exit_code(f.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return 3;
  }
  return 0;
}
