// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#include "hatsim/errors.hpp"

namespace hatsim {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Config: return "config";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Singularity: return "singularity";
    case ErrorCode::Tolerance: return "tolerance";
    case ErrorCode::Resonance: return "resonance";
    case ErrorCode::NoRoot: return "no-root";
    case ErrorCode::Quadrature: return "quadrature";
    case ErrorCode::Convergence: return "convergence";
    case ErrorCode::Infeasible: return "infeasible";
  }
  return "unknown";
}

}  // namespace hatsim
