// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/parallel.hpp"

#include <cstdlib>
#include <string>

namespace hatsim {

int resolve_workers(int fallback) {
  if (const char* env = std::getenv("HATSIM_WORKERS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  if (fallback > 0) return fallback;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace hatsim
