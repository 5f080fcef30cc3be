// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/table.hpp"

#include <cmath>
#include <cstdio>

#include "hatsim/errors.hpp"

namespace hatsim {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void Table::add_meta(std::string key, double value) { add_meta(std::move(key), format_number(value)); }

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ValidationError("row width does not match the header");
  rows.push_back(std::move(row));
}

namespace {

std::string text_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + ": " + v + "\n";
  for (std::size_t j = 0; j < columns.size(); ++j) out += (j ? "," : "") + columns[j];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ",";
      if (const double* d = std::get_if<double>(&row[j])) out += format_number(*d);
      else out += text_cell(std::get<std::string>(row[j]));
    }
    out += "\n";
  }
  return out;
}

}  // namespace hatsim
