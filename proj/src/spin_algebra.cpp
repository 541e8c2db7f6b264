// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/spin_algebra.hpp"

#include <cmath>
#include <string>

#include "xxzgap/errors.hpp"

namespace xxzgap {

SpinParams::SpinParams(int M, double delta) : M_(M), delta_(delta) {
  if (M < 1) throw InvalidArgument("M must be >= 1, got " + std::to_string(M));
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("delta must be a positive finite number");
  }
}

SiteMatrix lowering(const SpinParams& params) {
  const int M = params.M();
  SiteMatrix out = SiteMatrix::Zero(M + 1, M + 1);
  // J(J+1) - (J-k)(J-k-1) = (k+1)(M-k) once J = M/2 is substituted.
  for (int k = 0; k < M; ++k) {
    out(k + 1, k) = std::sqrt(static_cast<double>((k + 1) * (M - k)));
  }
  return out;
}

SiteMatrix raising(const SpinParams& params) { return lowering(params).transpose(); }

SiteMatrix s3(const SpinParams& params) {
  const int M = params.M();
  SiteMatrix out = SiteMatrix::Zero(M + 1, M + 1);
  for (int k = 0; k <= M; ++k) out(k, k) = 0.5 * (M - 2 * k);
  return out;
}

SiteMatrix nloc(const SpinParams& params) {
  const int M = params.M();
  SiteMatrix out = SiteMatrix::Zero(M + 1, M + 1);
  for (int k = 0; k <= M; ++k) out(k, k) = k;
  return out;
}

std::pair<SiteMatrix, SiteMatrix> annihil_create(const SpinParams& params) {
  const int M = params.M();
  SiteMatrix a = SiteMatrix::Zero(M + 1, M + 1);
  for (int k = 0; k < M; ++k) a(k + 1, k) = 1.0;
  SiteMatrix a_star = a.transpose();
  return {a, a_star};
}

PairMatrix kron(const SiteMatrix& x, const SiteMatrix& y) {
  PairMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

PairMatrix ising_part(const SpinParams& params) {
  const int d = params.local_dim();
  const SiteMatrix z = s3(params);
  return params.j_squared() * PairMatrix::Identity(d * d, d * d) - kron(z, z);
}

PairMatrix hopping_part(const SpinParams& params) {
  const SiteMatrix lo = lowering(params);
  const SiteMatrix up = raising(params);
  return kron(up, lo) + kron(lo, up);
}

PairMatrix two_site_h(const SpinParams& params) {
  return ising_part(params) - (0.5 / params.delta()) * hopping_part(params);
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_psd(const Eigen::MatrixXd& symmetric, double tol) {
  return min_eigenvalue(symmetric) >= -tol;
}

}  // namespace xxzgap
