// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hatsim/cloak.hpp"
#include "hatsim/hetero.hpp"
#include "hatsim/observables.hpp"
#include "hatsim/tuner.hpp"

namespace hatsim {

struct TuneSettings {
  tuner::Bracket bracket;
  double scan_step = 0.25;
  double xtol = 1e-6;
  tuner::ResonanceRule rule = tuner::ResonanceRule::OutgoingPole;
  tuner::ModeThresholds thresholds;
  bool operator==(const TuneSettings&) const = default;
};

struct InteractSettings {
  double a = 1e-3;
  int table_cells = 4000;
  bool operator==(const InteractSettings&) const = default;
};

struct HeteroSettings {
  double ell = 10.0;
  hetero::MaterialTable materials{{{{0.5, 0.0}, {1.0, -0.1}, {1.0, 0.3}, {2.0, 0.0}}}, 1.0};
  std::vector<int> J{8, 16, 32, 64};
  double r_out = 0.0;  // 0: 2 ell
  int quantize_cells = 32;
  double v_plus = 0.0;   // 0: max material V
  double v_minus = 0.0;  // 0: -min material V
  double e_c = 0.0;
  double temperature = 0.0;
  double k_b = 1.0;
  bool operator==(const HeteroSettings&) const = default;
};

struct RunConfig {
  HatConfig hat;
  TuneSettings tune;
  observables::Drive drive = observables::Drive::Auto;
  observables::GameSpec game;
  InteractSettings interact;
  HeteroSettings hetero;
  int workers = 0;  // 0: HATSIM_WORKERS, else 1
  std::string output;
  bool operator==(const RunConfig&) const = default;
};

// INI text with [cloak], [shells], [run], [game], [interact], [hetero]; '#' or ';' comments.
// Throws ParseError (with line) on syntax or unknown keys, ValidationError on invariants.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);
void validate(const RunConfig& config);

// Canonical INI form; parse_config_text(to_ini(c)) == c.
std::string to_ini(const RunConfig& config);
// FNV-1a 64 of the canonical form, ignoring workers and output.
std::uint64_t config_hash(const RunConfig& config);
std::string hash_hex(std::uint64_t h);

}  // namespace hatsim
