// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xxzgap/sparse.hpp"
#include "xxzgap/spin_algebra.hpp"

namespace xxzgap {

enum class SpectrumMethod { dense, iterative };

std::string to_string(SpectrumMethod m);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residual_norms;
  SpectrumMethod method = SpectrumMethod::dense;
  int iterations = 0;
  std::int64_t matvecs = 0;

  double max_residual() const;
};

/// All eigenvalues. Throws DimensionCap beyond max_dense.
SpectrumResult dense_spectrum(const DenseMatrix& matrix, std::size_t max_dense = Caps{}.max_dense);
SpectrumResult dense_spectrum(const SparseSymmetric& matrix, std::size_t max_dense = Caps{}.max_dense);

struct KrylovOptions {
  double tol = 1e-9;          // absolute residual bound per returned pair
  std::uint64_t seed = 0x5eed;
  int guard = 2;              // extra pairs that must converge beyond k
  int block_size = 8;
  int max_basis = 0;          // 0: chosen from k and block size
  int max_iterations = 5000;
};

/// k smallest eigenvalues by a thick-restarted block Davidson method with a
/// diagonal preconditioner and full reorthogonalization. Deterministic for a
/// fixed seed.
SpectrumResult lowest_k(const SparseSymmetric& op, int k, const KrylovOptions& options = {});

/// Inertia counts of a dense symmetric matrix from a Bunch-Kaufman LDL^T.
struct Inertia {
  std::int64_t negative = 0;
  std::int64_t zero = 0;
  std::int64_t positive = 0;
};

/// Pivots with magnitude below zero_tol count as zero.
Inertia dense_inertia(const DenseMatrix& symmetric, double zero_tol);

enum class CountMethod { automatic, dense, schur, sparse_ldlt };

std::string to_string(CountMethod m);

struct CountOptions {
  CountMethod method = CountMethod::automatic;
  std::size_t max_dense = Caps{}.max_dense;
  /// Largest non-dominant block the Schur route will eliminate densely.
  std::size_t max_schur_block = 1'024;
  std::size_t max_sparse_factor = 60'000;
  double cg_tol = 1e-13;
  int cg_max_iterations = 20'000;
};

struct CountResult {
  std::int64_t count = 0;
  CountMethod method = CountMethod::dense;
  /// Rows kept in the dense Schur block (schur method only).
  std::size_t schur_block = 0;
};

/// Exact number of eigenvalues strictly below E, from the inertia of H - E.
/// Throws SingularShift when the factorization finds E (numerically) in the
/// spectrum, DimensionCap when no route fits the limits.
std::int64_t count_below(const SparseSymmetric& matrix, double E, const CountOptions& options = {});
CountResult count_below_detailed(const SparseSymmetric& matrix, double E, const CountOptions& options = {});

/// Eigenvalues in the open interval (0, (1 - M/delta) V_{N,2}).
/// Throws InvalidDelta unless params.droplet_valid().
std::vector<double> droplet_band(const SpectrumResult& spectrum, const SpinParams& params,
                                 std::int64_t vn2_x2);

struct Multiplet {
  double value;
  int multiplicity;
};

/// Groups ascending eigenvalues lying within tol of the first member.
std::vector<Multiplet> group_multiplets(const std::vector<double>& ascending, double tol = 1e-7);

/// max |lambda| of a symmetric operator (dense when small, iterative otherwise).
double spectral_norm(const SparseSymmetric& op, std::size_t max_dense = Caps{}.max_dense);

}  // namespace xxzgap
