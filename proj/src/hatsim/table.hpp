// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hatsim {

using Cell = std::variant<double, std::string>;

// Rows of numbers or text with '#' metadata lines; numbers print with 9 significant digits.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_meta(std::string key, double value);
  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

std::string format_number(double x);

}  // namespace hatsim
