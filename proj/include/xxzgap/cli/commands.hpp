// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "xxzgap/cli/run_config.hpp"

namespace xxzgap::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kDimensionCap = 3;

int cmd_equivalence(const RunConfig& cfg, std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out);
int cmd_droplets(const RunConfig& cfg, std::ostream& out);
int cmd_certify(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_export(const RunConfig& cfg, std::ostream& out);

/// Validates, dispatches on cfg.command and maps errors to exit codes.
/// Diagnostics go to err as a single line.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace xxzgap::cli
