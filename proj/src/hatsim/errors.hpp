// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hatsim Authors
#pragma once

#include <stdexcept>
#include <string>

namespace hatsim {

enum class ErrorCode {
  Domain,
  Overflow,
  Config,
  Parse,
  Validation,
  Singularity,
  Tolerance,
  Resonance,
  NoRoot,
  Quadrature,
  Convergence,
  Infeasible,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define HATSIM_DEFINE_ERROR(Name, Code)                                        \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {}  \
  };

HATSIM_DEFINE_ERROR(DomainError, Domain)
HATSIM_DEFINE_ERROR(OverflowError, Overflow)
HATSIM_DEFINE_ERROR(ConfigError, Config)
HATSIM_DEFINE_ERROR(ValidationError, Validation)
HATSIM_DEFINE_ERROR(SingularityError, Singularity)
HATSIM_DEFINE_ERROR(ToleranceError, Tolerance)
HATSIM_DEFINE_ERROR(ResonanceError, Resonance)
HATSIM_DEFINE_ERROR(NoRootError, NoRoot)
HATSIM_DEFINE_ERROR(QuadratureError, Quadrature)
HATSIM_DEFINE_ERROR(ConvergenceError, Convergence)
HATSIM_DEFINE_ERROR(InfeasibleError, Infeasible)

#undef HATSIM_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace hatsim
