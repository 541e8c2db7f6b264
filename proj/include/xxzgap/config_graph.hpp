// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xxzgap/lattice.hpp"
#include "xxzgap/sparse.hpp"

namespace xxzgap {

/// Occupation function m: V -> {0, ..., M}.
class Configuration {
 public:
  /// Throws InvalidArgument if any entry is outside [0, M].
  Configuration(std::vector<int> occupations, int M);
  /// Additionally enforces sum(occupations) == N.
  Configuration(std::vector<int> occupations, int M, int N);

  const std::vector<int>& occupations() const noexcept { return occ_; }
  int operator[](std::size_t x) const { return occ_[x]; }
  std::size_t size() const noexcept { return occ_.size(); }
  int total() const noexcept { return total_; }

  /// Array notation "(0,2,3,3,1,0)".
  std::string to_array_string() const;

  bool operator==(const Configuration& o) const { return occ_ == o.occ_; }
  auto operator<=>(const Configuration& o) const { return occ_ <=> o.occ_; }

 private:
  std::vector<int> occ_;
  int total_ = 0;
};

/// Number of vectors in {0..M}^n summing to N. Saturates at UINT64_MAX.
std::uint64_t bounded_composition_count(int n, int M, int N);

/// Vertex set M_N of the N-particle graph with maximal local occupation M,
/// ordered lexicographically with site 0 most significant.
class ConfigSpace {
 public:
  /// Throws InvalidParticleNumber unless 0 <= N <= M * n, DimensionCap if the
  /// count exceeds caps.max_configs.
  static ConfigSpace enumerate(const BaseGraph& base, int M, int N, const Caps& caps = {});

  int M() const noexcept { return M_; }
  int N() const noexcept { return N_; }
  int n_sites() const noexcept { return n_; }
  const BaseGraph& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const std::uint8_t> occupations(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  Configuration config(std::size_t i) const;

  /// Lexicographic rank; nullopt if the vector is not in M_N.
  std::optional<std::size_t> index_of(std::span<const int> occupations) const;
  std::optional<std::size_t> index_of(std::span<const std::uint8_t> occupations) const;
  std::optional<std::size_t> index_of(const Configuration& c) const {
    return index_of(std::span<const int>(c.occupations()));
  }

 private:
  ConfigSpace(const BaseGraph& base, int M, int N);

  template <typename T>
  std::optional<std::size_t> rank(std::span<const T> occ) const;

  std::uint64_t count(int parts, int sum) const {
    return counts_[static_cast<std::size_t>(parts) * static_cast<std::size_t>(N_ + 1) +
                   static_cast<std::size_t>(sum)];
  }

  BaseGraph base_;
  int M_;
  int N_;
  int n_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> data_;
  std::vector<std::uint64_t> counts_;  // (n+1) x (N+1)
};

/// Undirected edge of G^{M,N}, stored once with i < j.
struct WeightedConfigEdge {
  std::int32_t i;
  std::int32_t j;
  /// Exact 4 w^2: product over the two changed sites of M(a+b+1) - 2ab.
  std::int64_t weight_sq_times_4;
  /// w = sqrt(weight_sq_times_4) / 2.
  double weight;
};

/// Per-site factor 2 * ((M/2)(a+b+1) - ab) for a site going from a to b.
inline std::int64_t site_weight_factor_x2(int M, int a, int b) {
  return static_cast<std::int64_t>(M) * (a + b + 1) - 2LL * a * b;
}

/// Sorted by (i, j), deduplicated.
std::vector<WeightedConfigEdge> build_edges(const ConfigSpace& space, const Caps& caps = {});

/// Exact 2 V_N per configuration.
struct PotentialVector {
  std::vector<std::int64_t> values_x2;

  double value(std::size_t i) const { return 0.5 * static_cast<double>(values_x2[i]); }
  std::size_t size() const noexcept { return values_x2.size(); }
};

/// 2 v(a, b) = M(a+b) - 2ab.
inline std::int64_t pair_potential_x2(int M, int a, int b) {
  return static_cast<std::int64_t>(M) * (a + b) - 2LL * a * b;
}

PotentialVector potential(const ConfigSpace& space);

/// Weighted degree D_N(m) = sum of w(m, n) over neighbours n.
Vector weighted_degree(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges);

/// Sum over sites of W_x m(x), the magnetic-field diagonal.
Vector field_diagonal(const ConfigSpace& space, std::span<const double> field);

struct SchrodingerOperators {
  SparseSymmetric adjacency;      // A_N
  SparseSymmetric degree;         // D_N
  SparseSymmetric neg_laplacian;  // -L_N = D_N - A_N
  SparseSymmetric hamiltonian;    // -(1/(2 delta)) A_N + V_N (+ field)
};

SparseSymmetric assemble_adjacency(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                   const Caps& caps = {});

/// -(1/(2 delta)) A_N + V_N + sum_x W_x m(x). An empty field means W = 0.
SparseSymmetric assemble_hamiltonian(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                     const PotentialVector& pot, double delta,
                                     std::span<const double> field = {}, const Caps& caps = {});

SchrodingerOperators assemble(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                              const PotentialVector& pot, double delta,
                              std::span<const double> field = {}, const Caps& caps = {});

}  // namespace xxzgap
