// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <utility>

namespace xxzgap {

/// Single-site spin J stored as M = 2J together with the anisotropy delta.
///
/// Every matrix below is written in the occupation basis e_0, ..., e_M where
/// e_k carries k particles (e_k is the S^3 eigenvector with eigenvalue J - k).
class SpinParams {
 public:
  SpinParams(int M, double delta);

  int M() const noexcept { return M_; }
  double delta() const noexcept { return delta_; }
  int local_dim() const noexcept { return M_ + 1; }

  /// J^2 = M^2 / 4.
  double j_squared() const noexcept { return 0.25 * M_ * M_; }

  /// True iff delta > M, the regime every gap analysis requires.
  bool droplet_valid() const noexcept { return delta_ > M_; }

 private:
  int M_;
  double delta_;
};

/// Dense (M+1)x(M+1) single-site operator.
using SiteMatrix = Eigen::MatrixXd;
/// Dense (M+1)^2 x (M+1)^2 operator on a site pair, index ka * (M+1) + kb.
using PairMatrix = Eigen::MatrixXd;

/// S^-: e_k -> sqrt((k+1)(M-k)) e_{k+1}.
SiteMatrix lowering(const SpinParams& params);
/// S^+ = (S^-)^T.
SiteMatrix raising(const SpinParams& params);
/// S^3 = diag(J - k).
SiteMatrix s3(const SpinParams& params);
/// N^loc = J - S^3 = diag(k).
SiteMatrix nloc(const SpinParams& params);
/// (a, a*): a moves e_k -> e_{k+1} (creation), a* is its transpose.
std::pair<SiteMatrix, SiteMatrix> annihil_create(const SpinParams& params);

/// Kronecker product with the first factor acting on site x.
PairMatrix kron(const SiteMatrix& x, const SiteMatrix& y);

/// J^2 - S^3 (x) S^3, the Ising part of the pair Hamiltonian.
PairMatrix ising_part(const SpinParams& params);
/// S^+ (x) S^- + S^- (x) S^+, the hopping part (without the 1/(2 delta)).
PairMatrix hopping_part(const SpinParams& params);

/// h_xy = J^2 - (1/(2 delta)) (S^+ S^- + S^- S^+) - S^3 S^3.
PairMatrix two_site_h(const SpinParams& params);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& symmetric);

/// PSD test with tolerance on the smallest eigenvalue.
bool is_psd(const Eigen::MatrixXd& symmetric, double tol = 1e-12);

}  // namespace xxzgap
