// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xxzgap/config_graph.hpp"
#include "xxzgap/sparse.hpp"

namespace xxzgap {

// Stream layout:
//   one line of JSON (the header), terminated by '\n'
//   dim * n_sites bytes of occupations, configuration-major
//   nnz records of {u64 row, u64 col, f64 value}, little-endian, row-major order

struct OperatorHeader {
  std::string format = "xxzgap-triplets";
  int version = 1;
  std::string graph;
  std::string name;
  int n_sites = 0;
  int M = 0;
  int N = 0;
  std::uint64_t dim = 0;
  std::uint64_t nnz = 0;
};

struct OperatorRecord {
  OperatorHeader header;
  std::vector<std::uint8_t> occupations;
  SparseSymmetric matrix;
};

/// Writes configurations and the full (both-triangle) matrix.
void write_operator(std::ostream& out, const ConfigSpace& space, const SparseSymmetric& op,
                    const std::string& name);

/// Throws ParseError on a malformed header or truncated stream.
OperatorRecord read_operator(std::istream& in);

}  // namespace xxzgap
