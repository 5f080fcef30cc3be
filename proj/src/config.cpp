// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hatsim/errors.hpp"

namespace hatsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

double to_double(const std::string& v, int line) {
  const char* s = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(x)) throw ParseError(line, "expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& v, int line) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ParseError(line, "expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v, int line) {
  const std::string l = lower(v);
  if (l == "true" || l == "yes" || l == "1") return true;
  if (l == "false" || l == "no" || l == "0") return false;
  throw ParseError(line, "expected true/false, got '" + v + "'");
}

std::vector<int> to_int_list(const std::string& v, int line) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(trim(item), line));
  if (out.empty()) throw ParseError(line, "empty list");
  return out;
}

std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string fmt_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

const char* model_name(CloakModel m) { return m == CloakModel::Printed ? "printed" : "pushforward"; }
const char* convention_name(ShellConvention c) {
  return c == ShellConvention::Multiplicative ? "multiplicative" : "additive";
}
const char* rule_name(tuner::ResonanceRule r) { return r == tuner::ResonanceRule::Dirichlet ? "dirichlet" : "pole"; }
const char* drive_name(observables::Drive d) {
  switch (d) {
    case observables::Drive::Eigen: return "eigen";
    case observables::Drive::Dirichlet: return "dirichlet";
    default: return "auto";
  }
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

std::map<std::string, Setter> setters() {
  std::map<std::string, Setter> m;
  m["cloak.rho"] = [](RunConfig& c, const std::string& v, int l) { c.hat.rho = to_double(v, l); };
  m["cloak.L"] = [](RunConfig& c, const std::string& v, int l) { c.hat.L = to_double(v, l); };
  m["cloak.E"] = [](RunConfig& c, const std::string& v, int l) { c.hat.E = to_double(v, l); };
  m["cloak.n_max"] = [](RunConfig& c, const std::string& v, int l) { c.hat.n_max = to_int(v, l); };
  m["cloak.ode_tol"] = [](RunConfig& c, const std::string& v, int l) { c.hat.ode_tol = to_double(v, l); };
  m["cloak.quad_tol"] = [](RunConfig& c, const std::string& v, int l) { c.hat.quad_tol = to_double(v, l); };
  m["cloak.enabled"] = [](RunConfig& c, const std::string& v, int l) { c.hat.cloak = to_bool(v, l); };
  m["cloak.model"] = [](RunConfig& c, const std::string& v, int l) {
    const std::string s = lower(v);
    if (s == "pushforward") c.hat.cloak_model = CloakModel::Pushforward;
    else if (s == "printed") c.hat.cloak_model = CloakModel::Printed;
    else throw ParseError(l, "model must be pushforward or printed");
  };
  m["shells.convention"] = [](RunConfig& c, const std::string& v, int l) {
    const std::string s = lower(v);
    if (s == "additive") c.hat.convention = ShellConvention::Additive;
    else if (s == "multiplicative") c.hat.convention = ShellConvention::Multiplicative;
    else throw ParseError(l, "convention must be additive or multiplicative");
  };
  m["run.workers"] = [](RunConfig& c, const std::string& v, int l) { c.workers = to_int(v, l); };
  m["run.output"] = [](RunConfig& c, const std::string& v, int) { c.output = v; };
  m["run.bracket_lo"] = [](RunConfig& c, const std::string& v, int l) { c.tune.bracket.lo = to_double(v, l); };
  m["run.bracket_hi"] = [](RunConfig& c, const std::string& v, int l) { c.tune.bracket.hi = to_double(v, l); };
  m["run.scan_step"] = [](RunConfig& c, const std::string& v, int l) { c.tune.scan_step = to_double(v, l); };
  m["run.xtol"] = [](RunConfig& c, const std::string& v, int l) { c.tune.xtol = to_double(v, l); };
  m["run.hat_tol"] = [](RunConfig& c, const std::string& v, int l) { c.tune.thresholds.hat_tol = to_double(v, l); };
  m["run.amp_threshold"] = [](RunConfig& c, const std::string& v, int l) {
    c.tune.thresholds.amp_threshold = to_double(v, l);
  };
  m["run.resonance_rule"] = [](RunConfig& c, const std::string& v, int l) {
    const std::string s = lower(v);
    if (s == "pole") c.tune.rule = tuner::ResonanceRule::OutgoingPole;
    else if (s == "dirichlet") c.tune.rule = tuner::ResonanceRule::Dirichlet;
    else throw ParseError(l, "resonance_rule must be pole or dirichlet");
  };
  m["run.drive"] = [](RunConfig& c, const std::string& v, int l) {
    const std::string s = lower(v);
    if (s == "auto") c.drive = observables::Drive::Auto;
    else if (s == "eigen") c.drive = observables::Drive::Eigen;
    else if (s == "dirichlet") c.drive = observables::Drive::Dirichlet;
    else throw ParseError(l, "drive must be auto, eigen or dirichlet");
  };
  m["game.n_balls"] = [](RunConfig& c, const std::string& v, int l) { c.game.n_balls = to_int(v, l); };
  m["game.r1"] = [](RunConfig& c, const std::string& v, int l) { c.game.region.r1 = to_double(v, l); };
  m["game.r2"] = [](RunConfig& c, const std::string& v, int l) { c.game.region.r2 = to_double(v, l); };
  m["interact.a"] = [](RunConfig& c, const std::string& v, int l) { c.interact.a = to_double(v, l); };
  m["interact.table_cells"] = [](RunConfig& c, const std::string& v, int l) {
    c.interact.table_cells = to_int(v, l);
  };
  m["hetero.ell"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.ell = to_double(v, l); };
  m["hetero.m0"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.materials.m0 = to_double(v, l); };
  for (int i = 0; i < 4; ++i) {
    const std::string n = std::to_string(i + 1);
    m["hetero.m" + n] = [i](RunConfig& c, const std::string& v, int l) {
      c.hetero.materials.entries[static_cast<std::size_t>(i)].m = to_double(v, l);
    };
    m["hetero.V" + n] = [i](RunConfig& c, const std::string& v, int l) {
      c.hetero.materials.entries[static_cast<std::size_t>(i)].V = to_double(v, l);
    };
  }
  m["hetero.J"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.J = to_int_list(v, l); };
  m["hetero.r_out"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.r_out = to_double(v, l); };
  m["hetero.quantize_cells"] = [](RunConfig& c, const std::string& v, int l) {
    c.hetero.quantize_cells = to_int(v, l);
  };
  m["hetero.v_plus"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.v_plus = to_double(v, l); };
  m["hetero.v_minus"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.v_minus = to_double(v, l); };
  m["hetero.E_c"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.e_c = to_double(v, l); };
  m["hetero.T"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.temperature = to_double(v, l); };
  m["hetero.k_B"] = [](RunConfig& c, const std::string& v, int l) { c.hetero.k_b = to_double(v, l); };
  return m;
}

// "s12" -> 12, "tau3" -> 3, else 0
int shell_index(const std::string& key, const std::string& prefix) {
  if (key.rfind(prefix, 0) != 0 || key.size() == prefix.size()) return 0;
  const std::string rest = key.substr(prefix.size());
  for (char ch : rest)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return 0;
  if (rest[0] == '0') return 0;
  return std::atoi(rest.c_str());
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  static const std::map<std::string, Setter> table = setters();
  static const std::vector<std::string> sections{"cloak", "shells", "run", "game", "interact", "hetero"};
  RunConfig c;
  std::map<int, double> radii, taus;
  std::map<std::string, int> seen;
  bool have_e = false;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const std::size_t hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (std::find(sections.begin(), sections.end(), section) == sections.end())
        throw ParseError(line, "unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) throw ParseError(line, "key outside of a section");
    if (key.empty() || value.empty()) throw ParseError(line, "empty key or value");
    const std::string full = section + "." + key;
    if (seen.count(full)) throw ParseError(line, "duplicate key " + full + " (first on line " +
                                                     std::to_string(seen[full]) + ")");
    seen[full] = line;
    if (section == "shells") {
      if (int j = shell_index(key, "s")) {
        radii[j] = to_double(value, line);
        continue;
      }
      if (int j = shell_index(key, "tau")) {
        taus[j] = to_double(value, line);
        continue;
      }
    }
    const auto it = table.find(full);
    if (it == table.end()) throw ParseError(line, "unknown key '" + key + "' in [" + section + "]");
    it->second(c, value, line);
    if (full == "cloak.E") have_e = true;
  }
  if (!have_e) throw ValidationError("missing required key E in [cloak]");
  for (const auto& [j, t] : taus)
    if (!radii.count(j)) throw ValidationError("tau" + std::to_string(j) + " has no matching s" + std::to_string(j));
  int expect = 1;
  for (const auto& [j, r] : radii) {
    if (j != expect) throw ValidationError("shell radii must be numbered s1, s2, ... without gaps");
    ++expect;
    const auto t = taus.find(j);
    if (t == taus.end() && j != 1)
      throw ValidationError("missing tau" + std::to_string(j) + " for shell s" + std::to_string(j));
    c.hat.shells.push_back({r, t == taus.end() ? 0.0 : t->second});
  }
  validate(c);
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void validate(const RunConfig& c) {
  try {
    c.hat.validate();
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  if (c.workers < 0) throw ValidationError("workers must be >= 0");
  if (!(c.tune.bracket.lo < c.tune.bracket.hi)) throw ValidationError("bracket_lo must be below bracket_hi");
  if (!(c.tune.scan_step > 0.0) || !(c.tune.xtol > 0.0)) throw ValidationError("scan_step and xtol must be positive");
  if (!(c.tune.thresholds.hat_tol > 0.0) || !(c.tune.thresholds.amp_threshold > 0.0))
    throw ValidationError("hat_tol and amp_threshold must be positive");
  if (c.game.n_balls < 2) throw ValidationError("n_balls must be at least 2");
  if (!(c.game.region.r1 < c.game.region.r2)) throw ValidationError("game region needs r1 < r2");
  if (c.interact.table_cells < 16) throw ValidationError("table_cells must be at least 16");
  const HeteroSettings& h = c.hetero;
  if (!(h.ell > 0.0)) throw ValidationError("ell must be positive");
  for (int j : h.J)
    if (j < 1) throw ValidationError("J values must be positive");
  if (h.quantize_cells < 1) throw ValidationError("quantize_cells must be positive");
  if (h.r_out < 0.0 || h.v_plus < 0.0 || h.v_minus < 0.0 || h.temperature < 0.0 || !(h.k_b > 0.0))
    throw ValidationError("hetero r_out, v_plus, v_minus, T must be >= 0 and k_B > 0");
  try {
    h.materials.validate();
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream o;
  o << "[cloak]\n"
    << "rho = " << fmt(c.hat.rho) << "\nL = " << fmt(c.hat.L) << "\nE = " << fmt(c.hat.E)
    << "\nn_max = " << c.hat.n_max << "\node_tol = " << fmt(c.hat.ode_tol) << "\nquad_tol = " << fmt(c.hat.quad_tol)
    << "\nenabled = " << (c.hat.cloak ? "true" : "false") << "\nmodel = " << model_name(c.hat.cloak_model) << "\n\n";
  o << "[shells]\nconvention = " << convention_name(c.hat.convention) << "\n";
  for (std::size_t j = 0; j < c.hat.shells.size(); ++j)
    o << "s" << j + 1 << " = " << fmt(c.hat.shells[j].radius) << "\ntau" << j + 1 << " = "
      << fmt(c.hat.shells[j].tau) << "\n";
  o << "\n[run]\nworkers = " << c.workers << "\n";
  if (!c.output.empty()) o << "output = " << c.output << "\n";
  o << "bracket_lo = " << fmt(c.tune.bracket.lo) << "\nbracket_hi = " << fmt(c.tune.bracket.hi)
    << "\nscan_step = " << fmt(c.tune.scan_step) << "\nxtol = " << fmt(c.tune.xtol)
    << "\nresonance_rule = " << rule_name(c.tune.rule) << "\nhat_tol = " << fmt(c.tune.thresholds.hat_tol)
    << "\namp_threshold = " << fmt(c.tune.thresholds.amp_threshold) << "\ndrive = " << drive_name(c.drive) << "\n\n";
  o << "[game]\nn_balls = " << c.game.n_balls << "\nr1 = " << fmt(c.game.region.r1) << "\nr2 = "
    << fmt(c.game.region.r2) << "\n\n";
  o << "[interact]\na = " << fmt(c.interact.a) << "\ntable_cells = " << c.interact.table_cells << "\n\n";
  const HeteroSettings& h = c.hetero;
  o << "[hetero]\nell = " << fmt(h.ell) << "\nm0 = " << fmt(h.materials.m0) << "\n";
  for (std::size_t i = 0; i < 4; ++i)
    o << "m" << i + 1 << " = " << fmt(h.materials.entries[i].m) << "\nV" << i + 1 << " = "
      << fmt(h.materials.entries[i].V) << "\n";
  o << "J = " << fmt_list(h.J) << "\nr_out = " << fmt(h.r_out) << "\nquantize_cells = " << h.quantize_cells
    << "\nv_plus = " << fmt(h.v_plus) << "\nv_minus = " << fmt(h.v_minus) << "\nE_c = " << fmt(h.e_c)
    << "\nT = " << fmt(h.temperature) << "\nk_B = " << fmt(h.k_b) << "\n";
  return o.str();
}

std::uint64_t config_hash(const RunConfig& c) {
  // execution settings do not change results
  RunConfig k = c;
  k.workers = 0;
  k.output.clear();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_ini(k)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hatsim
