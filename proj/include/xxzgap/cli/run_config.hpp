// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xxzgap/gap_analysis.hpp"
#include "xxzgap/lattice.hpp"
#include "xxzgap/sparse.hpp"

namespace xxzgap::cli {

enum class Mode { generic, chain_droplet, strip_droplet };

std::string to_string(Mode m);
/// Accepts "generic", "chain-droplet", "strip-droplet".
Mode parse_mode(const std::string& text);

struct DeltaRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// start, start + step, ... up to stop (inclusive within 1e-9 step).
  std::vector<double> values() const;
};

/// "start:stop:step", step > 0 and stop >= start.
DeltaRange parse_delta_range(const std::string& text);

/// "N" or "lo:hi" (inclusive); both ends non-negative with lo <= hi.
std::pair<int, int> parse_n_range(const std::string& text);

/// cycle:n, path:n, strip:nxL, cylinder:nxL, file:path.
BaseGraph build_graph(const std::string& spec);

/// One `site W` pair per line; '#' starts a comment. Unlisted sites get 0.
std::vector<double> read_field_file(const std::string& path, int n_sites);

struct RunConfig {
  std::string command;
  std::string graph;
  std::optional<int> M;
  std::optional<std::pair<int, int>> N;
  std::optional<double> delta;
  std::optional<DeltaRange> delta_range;
  int k_lowest = 0;
  Caps caps;
  Mode mode = Mode::generic;
  UpperBound bound = UpperBound::potential;
  std::string field_file;
  std::string out;
  std::uint64_t seed = 0x5eed;
  int threads = 1;
  bool multiplets = false;

  /// Throws InvalidArgument with a single-line reason.
  void validate() const;
};

/// Formats with 17 significant digits, '.' decimal point, no locale.
std::string format_double(double v);

}  // namespace xxzgap::cli
