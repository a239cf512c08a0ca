// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes the report to `out` (text or JSON) and diagnostics to `err`.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 a report whose
// certificate failed (uncertified solve, unverified bound, bench mismatch,
// rejected verify).

#include <iosfwd>
#include <string>
#include <vector>

namespace spp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCertificate = 2;

/// Version string written into every report.
const char* tool_version() noexcept;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spp::cli
