// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spp {

/// Machine-readable failure categories. The CLI prints `to_string(code)`.
enum class ErrorCode {
  dimension_mismatch,
  invalid_argument,
  non_finite,
  infeasible,
  unbounded,
  caps_exceeded,
  non_convergence,
  condition_violated,
  certificate_failure,
  empty_face,
  degenerate_sampling,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require_same_dim(std::size_t a, std::size_t b, std::string_view where) {
  if (a != b) {
    fail(ErrorCode::dimension_mismatch,
         std::string(where) + ": dimension mismatch (" + std::to_string(a) +
             " vs " + std::to_string(b) + ")");
  }
}

}  // namespace spp
