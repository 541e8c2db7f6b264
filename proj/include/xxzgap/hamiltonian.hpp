// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xxzgap/lattice.hpp"
#include "xxzgap/sparse.hpp"
#include "xxzgap/spin_algebra.hpp"

namespace xxzgap {

/// Product-basis index of an occupation vector: base-(M+1) digits with site 0
/// most significant. Ascending index order is lexicographic order.
std::int64_t product_index(std::span<const int> occupations, int M);

/// Product-basis states with total particle number N.
class SectorBasis {
 public:
  static SectorBasis build(int n_sites, int M, int N, const Caps& caps = {});

  int N() const noexcept { return N_; }
  int M() const noexcept { return M_; }
  int n_sites() const noexcept { return n_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<std::int64_t>& indices() const noexcept { return indices_; }

  /// Occupation vector (digit string) of a product-basis index.
  std::vector<int> decode(std::int64_t product_index) const;

 private:
  int n_ = 0;
  int M_ = 0;
  int N_ = 0;
  std::vector<std::int64_t> indices_;
};

/// H_G = sum over edges of h_xy on the full (M+1)^n space, plus
/// sum_x W_x N^loc_x when a field is given. Two-site kernels are applied
/// on the fly from two_site_h; no Kronecker factor larger than a pair is built.
SparseSymmetric assemble_full(const BaseGraph& base, const SpinParams& params,
                              std::span<const double> field = {}, const Caps& caps = {});

/// Diagonal of the total particle number operator N_G.
Vector total_number_diagonal(int n_sites, int M);

/// max |[H, N_G]_ij| = max |H_ij (n_j - n_i)| over stored entries.
double number_commutator_defect(const SparseSymmetric& full, int n_sites, int M);

/// Largest |H_ij| with i, j in different particle-number sectors.
double off_sector_coupling(const SparseSymmetric& full, int n_sites, int M);

/// Principal submatrix of H_G on the sector, in ascending product index
/// (= lexicographic configuration) order.
SparseSymmetric restrict(const SparseSymmetric& full, const SectorBasis& sector);

struct EquivalenceReport {
  double max_abs_diff = 0.0;
  std::size_t sector_dim = 0;
  std::size_t full_dim = 0;
  /// True when the sector order already coincided with ConfigSpace order.
  bool order_matches = false;
};

/// Compares the sector-restricted spin Hamiltonian with -(1/(2 delta)) A_N + V_N
/// (plus field) under psi_m <-> phi_m, realized as an index permutation.
EquivalenceReport equivalence_check(const BaseGraph& base, const SpinParams& params, int N,
                                    std::span<const double> field = {}, const Caps& caps = {});

}  // namespace xxzgap
