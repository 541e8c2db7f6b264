// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "xxzgap/errors.hpp"

namespace xxzgap {

SparseSymmetric SparseSymmetric::from_triplets(Eigen::Index dim, const std::vector<Triplet>& triplets) {
  CsrMatrix m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return SparseSymmetric(std::move(m));
}

SparseSymmetric SparseSymmetric::diagonal(const Vector& diag) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(diag.size()));
  for (Eigen::Index i = 0; i < diag.size(); ++i) t.emplace_back(i, i, diag(i));
  return from_triplets(diag.size(), t);
}

double SparseSymmetric::asymmetry() const {
  CsrMatrix t = m_.transpose();
  return max_abs_difference(*this, SparseSymmetric(std::move(t)));
}

double SparseSymmetric::max_abs() const {
  double out = 0.0;
  for (Eigen::Index k = 0; k < m_.nonZeros(); ++k) out = std::max(out, std::abs(m_.valuePtr()[k]));
  return out;
}

SparseSymmetric SparseSymmetric::principal(const std::vector<std::int64_t>& indices) const {
  std::vector<std::int64_t> position(static_cast<std::size_t>(dim()), -1);
  for (std::size_t p = 0; p < indices.size(); ++p) {
    const auto i = indices[p];
    if (i < 0 || i >= dim()) throw InvalidArgument("principal submatrix index out of range");
    position[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(p);
  }
  std::vector<Triplet> t;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    for_each_in_row(indices[p], [&](Eigen::Index col, double v) {
      const auto q = position[static_cast<std::size_t>(col)];
      if (q >= 0) t.emplace_back(static_cast<Eigen::Index>(p), q, v);
    });
  }
  return from_triplets(static_cast<Eigen::Index>(indices.size()), t);
}

double max_abs_difference(const SparseSymmetric& a, const SparseSymmetric& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch in difference");
  const CsrMatrix d = a.matrix() - b.matrix();
  double out = 0.0;
  for (Eigen::Index k = 0; k < d.nonZeros(); ++k) out = std::max(out, std::abs(d.valuePtr()[k]));
  return out;
}

}  // namespace xxzgap
