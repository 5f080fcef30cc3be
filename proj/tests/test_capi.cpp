// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "doctest.h"
#include "hatsim/hatsim.h"

namespace {

const std::string kConfigs = std::string(HATSIM_SOURCE_DIR) + "/configs/";

struct Config {
  hatsim_config* p = nullptr;
  ~Config() { hatsim_config_free(p); }
};

struct Tab {
  hatsim_table* p = nullptr;
  ~Tab() { hatsim_table_free(p); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(hatsim_version()) == "0.3.1");
  CHECK(std::string(hatsim_status_name(HATSIM_OK)) == "ok");
  CHECK(std::string(hatsim_status_name(HATSIM_E_PARSE)) == "parse");
  CHECK(std::string(hatsim_status_name(HATSIM_E_NO_ROOT)) == "no-root");
  CHECK(hatsim_exit_code(HATSIM_OK) == 0);
  CHECK(hatsim_exit_code(HATSIM_E_PARSE) == 2);
  CHECK(hatsim_exit_code(HATSIM_E_VALIDATION) == 2);
  CHECK(hatsim_exit_code(HATSIM_E_RESONANCE) == 3);
  CHECK(hatsim_exit_code(HATSIM_E_NO_ROOT) == 4);
}

TEST_CASE("parse failure reports the line") {
  Config c;
  CHECK(hatsim_config_parse("[cloak]\nE = 4\n\nbogus = 2\n", &c.p) == HATSIM_E_PARSE);
  CHECK(c.p == nullptr);
  CHECK(hatsim_last_error_line() == 4);
  CHECK(std::strstr(hatsim_last_error(), "bogus") != nullptr);

  CHECK(hatsim_config_parse("[cloak]\nrho = 0.1\n", &c.p) == HATSIM_E_VALIDATION);
  CHECK(hatsim_last_error_line() == 0);
  CHECK(hatsim_config_load("/nonexistent/x.ini", &c.p) == HATSIM_E_CONFIG);
}

TEST_CASE("null arguments") {
  hatsim_config* c = nullptr;
  CHECK(hatsim_config_parse(nullptr, &c) == HATSIM_E_INVALID_ARGUMENT);
  CHECK(hatsim_config_parse("[cloak]\nE = 4\n", nullptr) == HATSIM_E_INVALID_ARGUMENT);
  double v = 0.0;
  CHECK(hatsim_config_get(nullptr, "E", &v) == HATSIM_E_INVALID_ARGUMENT);
  hatsim_config_free(nullptr);
  hatsim_table_free(nullptr);
  hatsim_string_free(nullptr);
}

TEST_CASE("errors are per thread") {
  Config c;
  REQUIRE(hatsim_config_parse("[cloak]\nE = x\n", &c.p) == HATSIM_E_PARSE);
  std::string other;
  std::thread([&] { other = hatsim_last_error(); }).join();
  CHECK(other.empty());
  CHECK(std::string(hatsim_last_error()).find("line 2") != std::string::npos);
}

TEST_CASE("config accessors") {
  Config c;
  REQUIRE(hatsim_config_load((kConfigs + "fig3.ini").c_str(), &c.p) == HATSIM_OK);
  double v = 0.0;
  REQUIRE(hatsim_config_get(c.p, "E", &v) == HATSIM_OK);
  CHECK(v == 4.0);
  REQUIRE(hatsim_config_get(c.p, "R0", &v) == HATSIM_OK);
  CHECK(v == 0.8);
  REQUIRE(hatsim_config_get(c.p, "shells", &v) == HATSIM_OK);
  CHECK(v == 2.0);
  CHECK(hatsim_config_get(c.p, "nope", &v) == HATSIM_E_INVALID_ARGUMENT);

  const uint64_t h = hatsim_config_hash(c.p);
  REQUIRE(hatsim_config_set_tau1(c.p, 3.0) == HATSIM_OK);
  REQUIRE(hatsim_config_get(c.p, "tau1", &v) == HATSIM_OK);
  CHECK(v == 3.0);
  CHECK(hatsim_config_hash(c.p) != h);
  CHECK(hatsim_config_set_workers(c.p, -1) != HATSIM_OK);

  char* ini = nullptr;
  REQUIRE(hatsim_config_to_ini(c.p, &ini) == HATSIM_OK);
  Config d;
  REQUIRE(hatsim_config_parse(ini, &d.p) == HATSIM_OK);
  hatsim_string_free(ini);
  CHECK(hatsim_config_hash(d.p) == hatsim_config_hash(c.p));
}

TEST_CASE("bessel through the C surface") {
  double re = 0.0, im = 0.0;
  REQUIRE(hatsim_sph_bessel(HATSIM_BESSEL_J, 3, 2.5, 0.0, &re, &im) == HATSIM_OK);
  CHECK(re == doctest::Approx(0.10392046970240394).epsilon(1e-13));
  CHECK(im == 0.0);
  CHECK(hatsim_sph_bessel(HATSIM_BESSEL_Y, 200, 1e-3, 0.0, &re, &im) == HATSIM_E_OVERFLOW);
  CHECK(hatsim_sph_bessel(HATSIM_BESSEL_J, -1, 1.0, 0.0, &re, &im) == HATSIM_E_DOMAIN);
  CHECK(hatsim_sph_bessel(7, 1, 1.0, 0.0, &re, &im) == HATSIM_E_INVALID_ARGUMENT);
}

TEST_CASE("tuning and classification") {
  Config c;
  REQUIRE(hatsim_config_load((kConfigs + "fig3.ini").c_str(), &c.p) == HATSIM_OK);
  double tau = 0.0;
  REQUIRE(hatsim_find_tau1_sh(c.p, &tau) == HATSIM_OK);
  CHECK(std::abs(tau - 12.9016) < 0.01);
  int mode = -1;
  double amp = 0.0, res = 1.0;
  REQUIRE(hatsim_classify(c.p, tau, &mode, &amp, &res) == HATSIM_OK);
  CHECK(mode == HATSIM_MODE_HAT);
  CHECK(res < 1e-3);

  Config n;
  REQUIRE(hatsim_config_parse("[cloak]\nE = 4\n[shells]\ns1 = 0.6\ns2 = 0.8\ntau2 = 0\n"
                              "[run]\nbracket_lo = 0\nbracket_hi = 0.5\n",
                              &n.p) == HATSIM_OK);
  CHECK(hatsim_find_tau1_sh(n.p, &tau) == HATSIM_E_NO_ROOT);
  CHECK(hatsim_exit_code(HATSIM_E_NO_ROOT) == 4);
}

TEST_CASE("tables") {
  Config c;
  REQUIRE(hatsim_config_load((kConfigs + "fig3.ini").c_str(), &c.p) == HATSIM_OK);
  Tab t;
  REQUIRE(hatsim_run_probs(c.p, &t.p) == HATSIM_OK);
  REQUIRE(hatsim_table_cols(t.p) == 5);
  CHECK(std::string(hatsim_table_column(t.p, 0)) == "region");
  CHECK(hatsim_table_column(t.p, 5) == nullptr);
  CHECK(hatsim_table_rows(t.p) > 0);
  CHECK(std::string(hatsim_table_text(t.p, 0, 1)) == "empty");

  double v = 0.0;
  CHECK(hatsim_table_number(t.p, 0, 0, &v) == HATSIM_E_INVALID_ARGUMENT);
  REQUIRE(hatsim_table_number(t.p, 0, 4, &v) == HATSIM_OK);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK(hatsim_table_number(t.p, 999, 4, &v) == HATSIM_E_INVALID_ARGUMENT);

  CHECK(std::string(hatsim_table_meta(t.p, "command")) == "probs");
  CHECK(hatsim_table_meta(t.p, "absent") == nullptr);

  char* csv = nullptr;
  REQUIRE(hatsim_table_csv(t.p, &csv) == HATSIM_OK);
  CHECK(std::string(csv).rfind("# hatsim: 0.3.1\n", 0) == 0);
  CHECK(std::string(csv).find("region,ball,mass,total,probability\n") != std::string::npos);
  hatsim_string_free(csv);
}

TEST_CASE("worker count does not change tables") {
  Config c;
  REQUIRE(hatsim_config_load((kConfigs + "fig1.ini").c_str(), &c.p) == HATSIM_OK);
  std::string out[2];
  const int workers[2] = {1, 4};
  for (int i = 0; i < 2; ++i) {
    REQUIRE(hatsim_config_set_workers(c.p, workers[i]) == HATSIM_OK);
    Tab t;
    REQUIRE(hatsim_run_field_plane(c.p, HATSIM_SOURCE_SCATTER, 'z', 0.0, 17, 0.0, &t.p) == HATSIM_OK);
    char* csv = nullptr;
    REQUIRE(hatsim_table_csv(t.p, &csv) == HATSIM_OK);
    out[i] = csv;
    hatsim_string_free(csv);
  }
  CHECK(out[0] == out[1]);
}
