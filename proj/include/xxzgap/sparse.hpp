// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

namespace xxzgap {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using CsrMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

/// Size limits shared by every assembly and solver entry point.
struct Caps {
  std::size_t max_configs = 200'000;
  std::size_t max_nonzeros = 20'000'000;
  std::size_t max_dense = 6'000;
  /// Limit on (M+1)^n for full tensor-product assembly.
  std::size_t max_full_space = 250'000;
};

/// Symmetric operator in row-compressed storage with both triangles kept.
class SparseSymmetric {
 public:
  SparseSymmetric() = default;
  explicit SparseSymmetric(CsrMatrix m) : m_(std::move(m)) { m_.makeCompressed(); }

  /// Duplicates are summed. The caller is responsible for symmetry.
  static SparseSymmetric from_triplets(Eigen::Index dim, const std::vector<Triplet>& triplets);
  static SparseSymmetric diagonal(const Vector& diag);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  Eigen::Index nonzeros() const noexcept { return m_.nonZeros(); }
  const CsrMatrix& matrix() const noexcept { return m_; }

  /// y = A x
  Vector apply(const Vector& x) const { return m_ * x; }
  DenseMatrix apply(const DenseMatrix& x) const { return m_ * x; }

  double coeff(Eigen::Index i, Eigen::Index j) const { return m_.coeff(i, j); }
  Vector diagonal_values() const { return m_.diagonal(); }
  DenseMatrix to_dense() const { return DenseMatrix(m_); }

  /// Largest |a_ij - a_ji|; 0 means bit-exact symmetry.
  double asymmetry() const;
  double max_abs() const;

  SparseSymmetric operator+(const SparseSymmetric& o) const { return SparseSymmetric(CsrMatrix(m_ + o.m_)); }
  SparseSymmetric operator-(const SparseSymmetric& o) const { return SparseSymmetric(CsrMatrix(m_ - o.m_)); }
  SparseSymmetric scaled(double s) const { return SparseSymmetric(CsrMatrix(s * m_)); }

  /// Principal submatrix on the given row/column indices, in that order.
  SparseSymmetric principal(const std::vector<std::int64_t>& indices) const;

  template <typename F>
  void for_each_in_row(Eigen::Index row, F&& f) const {
    for (CsrMatrix::InnerIterator it(m_, row); it; ++it) f(it.col(), it.value());
  }

 private:
  CsrMatrix m_;
};

/// Entrywise max |a - b| over the union of both sparsity patterns.
double max_abs_difference(const SparseSymmetric& a, const SparseSymmetric& b);

}  // namespace xxzgap
