// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace okamoto {

enum class ErrorCode { Domain, Parse, Tolerance, Budget, Io, Internal };

constexpr std::string_view code_name(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Tolerance: return "tolerance";
    case ErrorCode::Budget: return "budget";
    case ErrorCode::Io: return "io";
    case ErrorCode::Internal: return "internal";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

// Parameter values closer than this are treated as equal (a == 1/3, a == 1/2, ...).
inline constexpr double kParamEps = 1e-12;

inline bool param_eq(double x, double y) noexcept { return std::fabs(x - y) <= kParamEps; }

inline void require_parameter(double a) {
  require(std::isfinite(a) && a > 0.0 && a < 1.0, ErrorCode::Domain,
          "parameter a must lie in (0,1), got " + std::to_string(a));
}

}  // namespace okamoto
