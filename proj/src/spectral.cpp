// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/spectral.hpp"

#include <lapacke.h>

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "xxzgap/errors.hpp"

namespace xxzgap {

std::string to_string(SpectrumMethod m) { return m == SpectrumMethod::dense ? "dense" : "iterative"; }

std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::automatic: return "automatic";
    case CountMethod::dense: return "dense";
    case CountMethod::schur: return "schur";
    case CountMethod::sparse_ldlt: return "sparse_ldlt";
  }
  return "unknown";
}

double SpectrumResult::max_residual() const {
  double out = 0.0;
  for (double r : residual_norms) out = std::max(out, r);
  return out;
}

// ---------------------------------------------------------------------------
// Dense

namespace {

// Eigenvalues ascending and eigenvectors (overwriting `a`) via LAPACK dsyevd.
Vector symmetric_eigen(DenseMatrix& a) {
  const auto n = static_cast<lapack_int>(a.rows());
  Vector w(a.rows());
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  if (info != 0) throw NoConvergence("dense symmetric eigensolver failed", 0);
  return w;
}

template <typename Op>
SpectrumResult dense_result(const Op& op, DenseMatrix vecs) {
  SpectrumResult out;
  out.method = SpectrumMethod::dense;
  const Vector vals = symmetric_eigen(vecs);
  const DenseMatrix residual = op * vecs - vecs * vals.asDiagonal();
  out.eigenvalues.assign(vals.data(), vals.data() + vals.size());
  out.residual_norms.resize(static_cast<std::size_t>(vals.size()));
  for (Eigen::Index j = 0; j < vals.size(); ++j) out.residual_norms[static_cast<std::size_t>(j)] = residual.col(j).norm();
  return out;
}

}  // namespace

SpectrumResult dense_spectrum(const DenseMatrix& matrix, std::size_t max_dense) {
  const auto n = static_cast<std::size_t>(matrix.rows());
  if (n > max_dense) throw DimensionCap("matrix too large for a dense eigensolve", n, max_dense);
  if (n == 0) return SpectrumResult{};
  return dense_result(matrix, matrix);
}

SpectrumResult dense_spectrum(const SparseSymmetric& matrix, std::size_t max_dense) {
  const auto n = static_cast<std::size_t>(matrix.dim());
  if (n > max_dense) throw DimensionCap("matrix too large for a dense eigensolve", n, max_dense);
  if (n == 0) return SpectrumResult{};
  return dense_result(matrix.matrix(), matrix.to_dense());
}

// ---------------------------------------------------------------------------
// Block Davidson

namespace {

class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  // Bit-level mapping so the stream does not depend on the library's
  // distribution implementation.
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

 private:
  std::mt19937_64 engine_;
};

DenseMatrix random_block(Eigen::Index n, Eigen::Index b, UniformSource& rng) {
  DenseMatrix out(n, b);
  for (Eigen::Index j = 0; j < b; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = rng();
  }
  return out;
}

// Orthogonalizes w against the first `cols` columns of basis, then
// orthonormalizes it internally; both steps run twice. Columns that collapse
// are dropped.
DenseMatrix orthonormalize_against(const DenseMatrix& basis, Eigen::Index cols, DenseMatrix w) {
  const Vector initial_norms = w.colwise().norm().transpose();
  std::vector<char> alive(static_cast<std::size_t>(w.cols()), 1);
  for (int round = 0; round < 2; ++round) {
    if (cols > 0) {
      const auto q = basis.leftCols(cols);
      const DenseMatrix coeffs = q.transpose() * w;
      w.noalias() -= q * coeffs;
    }
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (!alive[j]) continue;
      for (Eigen::Index p = 0; p < j; ++p) {
        if (alive[p]) w.col(j) -= w.col(p).dot(w.col(j)) * w.col(p);
      }
      const double nrm = w.col(j).norm();
      if (nrm > 1e-10 * std::max(1.0, initial_norms(j))) {
        w.col(j) /= nrm;
      } else {
        alive[j] = 0;
        w.col(j).setZero();
      }
    }
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    if (alive[j]) kept.push_back(j);
  }
  DenseMatrix out(w.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t p = 0; p < kept.size(); ++p) out.col(static_cast<Eigen::Index>(p)) = w.col(kept[p]);
  return out;
}

}  // namespace

SpectrumResult lowest_k(const SparseSymmetric& op, int k, const KrylovOptions& options) {
  if (k < 1) throw InvalidArgument("lowest_k needs k >= 1");
  const Eigen::Index n = op.dim();
  SpectrumResult out;
  out.method = SpectrumMethod::iterative;
  if (n == 0) return out;

  const Eigen::Index kk = std::min<Eigen::Index>(k, n);
  const Eigen::Index want = std::min<Eigen::Index>(n, kk + std::max(0, options.guard));
  const Eigen::Index b = std::min<Eigen::Index>(n, std::max(1, options.block_size));
  Eigen::Index m = options.max_basis > 0 ? options.max_basis : std::max(2 * want + 2 * b, want + 40);
  m = std::min(n, std::max(m, want + b));

  const Vector diag = op.diagonal_values();
  UniformSource rng(options.seed);
  DenseMatrix V(n, m);
  DenseMatrix HV(n, m);
  DenseMatrix T(m, m);  // V^T H V on the leading cols
  Eigen::Index cols = 0;
  DenseMatrix block = random_block(n, std::min(m, std::max(want, b)), rng);
  DenseMatrix fallback;  // raw residuals, used when corrections collapse
  int stalls = 0;

  for (int iter = 0;; ++iter) {
    DenseMatrix w = orthonormalize_against(V, cols, std::move(block));
    if (w.cols() == 0 && fallback.cols() > 0) w = orthonormalize_against(V, cols, std::move(fallback));
    if (w.cols() == 0 && cols < n) {
      if (++stalls > 8) throw NoConvergence("block Davidson solver stalled", iter);
      w = orthonormalize_against(V, cols, random_block(n, b, rng));
    }
    const Eigen::Index q = std::min<Eigen::Index>(w.cols(), m - cols);
    if (q > 0) {
      V.middleCols(cols, q) = w.leftCols(q);
      HV.middleCols(cols, q).noalias() = op.matrix() * w.leftCols(q);
      out.matvecs += q;
      // Extend the projected matrix by the new rows and columns only.
      const DenseMatrix cross = V.leftCols(cols + q).transpose() * HV.middleCols(cols, q);
      T.block(0, cols, cols + q, q) = cross;
      T.block(cols, 0, q, cols + q) = cross.transpose();
      T.block(cols, cols, q, q) = 0.5 * (cross.bottomRows(q) + cross.bottomRows(q).transpose());
      cols += q;
    }

    Eigen::SelfAdjointEigenSolver<DenseMatrix> rr(T.topLeftCorner(cols, cols));
    const Vector& theta = rr.eigenvalues();
    const Eigen::Index nw = std::min(want, cols);
    const DenseMatrix Y = rr.eigenvectors().leftCols(nw);
    const DenseMatrix X = V.leftCols(cols) * Y;
    const DenseMatrix R = HV.leftCols(cols) * Y - X * theta.head(nw).asDiagonal();
    std::vector<Eigen::Index> unconverged;
    for (Eigen::Index j = 0; j < nw; ++j) {
      if (R.col(j).norm() > options.tol) unconverged.push_back(j);
    }
    const bool exhausted = (cols == n);
    out.iterations = iter + 1;

    if ((unconverged.empty() && nw == want) || exhausted) {
      const Eigen::Index kr = std::min(kk, nw);
      const DenseMatrix true_r = op.matrix() * X.leftCols(kr) - X.leftCols(kr) * theta.head(kr).asDiagonal();
      out.matvecs += kr;
      out.eigenvalues.assign(theta.data(), theta.data() + kr);
      out.residual_norms.resize(static_cast<std::size_t>(kr));
      bool ok = true;
      for (Eigen::Index j = 0; j < kr; ++j) {
        out.residual_norms[static_cast<std::size_t>(j)] = true_r.col(j).norm();
        ok = ok && true_r.col(j).norm() <= options.tol;
      }
      if (ok || exhausted) return out;
      unconverged.clear();
      for (Eigen::Index j = 0; j < kr; ++j) {
        if (true_r.col(j).norm() > options.tol) unconverged.push_back(j);
      }
    }
    if (iter >= options.max_iterations) throw NoConvergence("block Davidson solver did not converge", iter);

    // Diagonal (Jacobi) preconditioned corrections for the leading
    // unconverged pairs.
    const Eigen::Index nb = std::min<Eigen::Index>(b, static_cast<Eigen::Index>(unconverged.size()));
    block.resize(n, nb);
    fallback.resize(n, nb);
    for (Eigen::Index c = 0; c < nb; ++c) {
      const Eigen::Index j = unconverged[static_cast<std::size_t>(c)];
      const double th = theta(j);
      const double floor = 1e-8 * (1.0 + std::abs(th));
      for (Eigen::Index i = 0; i < n; ++i) {
        double d = diag(i) - th;
        if (std::abs(d) < floor) d = d < 0 ? -floor : floor;
        block(i, c) = R(i, j) / d;
      }
      fallback.col(c) = R.col(j);
    }

    if (cols + nb > m) {
      // Thick restart on the leading Ritz vectors; H times them is
      // recomputed exactly to keep rounding from accumulating.
      const Eigen::Index keep = std::max<Eigen::Index>(1, std::min({cols, m - nb, want + b}));
      const DenseMatrix Vk = orthonormalize_against(V, 0, V.leftCols(cols) * rr.eigenvectors().leftCols(keep));
      cols = Vk.cols();
      V.leftCols(cols) = Vk;
      HV.leftCols(cols).noalias() = op.matrix() * Vk;
      out.matvecs += cols;
      const DenseMatrix Tk = Vk.transpose() * HV.leftCols(cols);
      T.topLeftCorner(cols, cols) = 0.5 * (Tk + Tk.transpose());
    }
  }
}

// ---------------------------------------------------------------------------
// Inertia

Inertia dense_inertia(const DenseMatrix& symmetric, double zero_tol) {
  Inertia out;
  const auto n = static_cast<lapack_int>(symmetric.rows());
  if (n == 0) return out;
  DenseMatrix a = symmetric;  // column-major copy, lower triangle used
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0) throw Error("dsytrf: invalid argument " + std::to_string(-info));
  auto classify = [&](double lambda) {
    if (std::abs(lambda) <= zero_tol) {
      ++out.zero;
    } else if (lambda < 0) {
      ++out.negative;
    } else {
      ++out.positive;
    }
  };
  for (lapack_int i = 0; i < n; ++i) {
    if (ipiv[i] > 0) {
      classify(a(i, i));
    } else {
      // 2x2 pivot block occupying rows i, i+1.
      const double p = a(i, i), q = a(i + 1, i), r = a(i + 1, i + 1);
      const double mean = 0.5 * (p + r);
      const double rad = std::hypot(0.5 * (p - r), q);
      classify(mean - rad);
      classify(mean + rad);
      ++i;
    }
  }
  return out;
}

namespace {

double max_abs_entry(const SparseSymmetric& m) { return m.max_abs(); }

CountResult count_dense(const SparseSymmetric& matrix, double E) {
  DenseMatrix a = matrix.to_dense();
  a.diagonal().array() -= E;
  const double scale = 1.0 + max_abs_entry(matrix) + std::abs(E);
  const Inertia in = dense_inertia(a, 1e-13 * scale);
  if (in.zero > 0) throw SingularShift("shift E = " + std::to_string(E) + " is numerically an eigenvalue");
  return {in.negative, CountMethod::dense, 0};
}

// Jacobi-preconditioned CG on all columns of B at once.
DenseMatrix block_pcg(const SparseSymmetric& A, const DenseMatrix& B, double tol, int max_iterations) {
  const Vector inv_diag = A.diagonal_values().cwiseInverse();
  DenseMatrix X = DenseMatrix::Zero(B.rows(), B.cols());
  DenseMatrix R = B;
  DenseMatrix Z = inv_diag.asDiagonal() * R;
  DenseMatrix P = Z;
  Vector rz = (R.cwiseProduct(Z)).colwise().sum().transpose();
  const Vector bnorm = B.colwise().norm().transpose();
  for (int it = 0; it < max_iterations; ++it) {
    const Vector rnorm = R.colwise().norm().transpose();
    bool done = true;
    for (Eigen::Index j = 0; j < B.cols(); ++j) done = done && rnorm(j) <= tol * std::max(bnorm(j), 1e-300);
    if (done) return X;
    const DenseMatrix AP = A.matrix() * P;
    const Vector pap = (P.cwiseProduct(AP)).colwise().sum().transpose();
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      if (rnorm(j) <= tol * bnorm(j) || pap(j) <= 0.0) continue;
      const double alpha = rz(j) / pap(j);
      X.col(j) += alpha * P.col(j);
      R.col(j) -= alpha * AP.col(j);
    }
    Z = inv_diag.asDiagonal() * R;
    const Vector rz_new = (R.cwiseProduct(Z)).colwise().sum().transpose();
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      const double beta = rz(j) > 0.0 ? rz_new(j) / rz(j) : 0.0;
      P.col(j) = Z.col(j) + beta * P.col(j);
    }
    rz = rz_new;
  }
  throw NoConvergence("conjugate gradients in Schur inertia count", max_iterations);
}

// Rows whose shifted row is strictly diagonally dominant with a positive
// diagonal form a positive definite block (Gershgorin). Eliminating that
// block leaves a small dense Schur complement carrying all the negative
// inertia (Haynsworth additivity).
std::optional<CountResult> count_schur(const SparseSymmetric& matrix, double E, const CountOptions& opt) {
  const Eigen::Index n = matrix.dim();
  const double scale = 1.0 + max_abs_entry(matrix) + std::abs(E);
  const double margin = 1e-6 * scale;
  std::vector<std::int64_t> v1, v2;
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = -E, off = 0.0;
    matrix.for_each_in_row(i, [&](Eigen::Index j, double v) {
      if (j == i) {
        diag += v;
      } else {
        off += std::abs(v);
      }
    });
    (diag - off > margin ? v2 : v1).push_back(i);
  }
  if (v1.size() > opt.max_schur_block) return std::nullopt;
  CountResult res{0, CountMethod::schur, v1.size()};
  if (v1.empty()) return res;

  const auto k = static_cast<Eigen::Index>(v1.size());
  std::vector<std::int64_t> pos2(static_cast<std::size_t>(n), -1);
  for (std::size_t p = 0; p < v2.size(); ++p) pos2[static_cast<std::size_t>(v2[p])] = static_cast<std::int64_t>(p);

  DenseMatrix S = matrix.principal(v1).to_dense();
  S.diagonal().array() -= E;
  if (!v2.empty()) {
    SparseSymmetric a22 = matrix.principal(v2);
    {
      std::vector<Triplet> shift;
      shift.reserve(v2.size());
      for (std::size_t p = 0; p < v2.size(); ++p) shift.emplace_back(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p), -E);
      a22 = a22 + SparseSymmetric::from_triplets(a22.dim(), shift);
    }
    DenseMatrix B = DenseMatrix::Zero(static_cast<Eigen::Index>(v2.size()), k);
    for (Eigen::Index c = 0; c < k; ++c) {
      matrix.for_each_in_row(v1[static_cast<std::size_t>(c)], [&](Eigen::Index j, double v) {
        const auto p = pos2[static_cast<std::size_t>(j)];
        if (p >= 0) B(p, c) = v;
      });
    }
    const DenseMatrix X = block_pcg(a22, B, opt.cg_tol, opt.cg_max_iterations);
    S.noalias() -= B.transpose() * X;
  }
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(S, Eigen::EigenvaluesOnly);
  const Vector& vals = solver.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) <= 1e-10 * scale) {
      throw SingularShift("shift E = " + std::to_string(E) + " is numerically an eigenvalue");
    }
    if (vals(i) < 0) ++res.count;
  }
  return res;
}

CountResult count_sparse_ldlt(const SparseSymmetric& matrix, double E) {
  Eigen::SparseMatrix<double> a(matrix.matrix());
  for (Eigen::Index i = 0; i < a.rows(); ++i) a.coeffRef(i, i) -= E;
  a.makeCompressed();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw SingularShift("sparse LDL^T failed at shift " + std::to_string(E));
  const Vector d = ldlt.vectorD();
  const double scale = 1.0 + max_abs_entry(matrix) + std::abs(E);
  CountResult res{0, CountMethod::sparse_ldlt, 0};
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d(i)) || std::abs(d(i)) <= 1e-13 * scale) {
      throw SingularShift("shift E = " + std::to_string(E) + " is numerically an eigenvalue");
    }
    if (d(i) < 0) ++res.count;
  }
  return res;
}

}  // namespace

CountResult count_below_detailed(const SparseSymmetric& matrix, double E, const CountOptions& options) {
  const auto n = static_cast<std::size_t>(matrix.dim());
  if (n == 0) return {0, CountMethod::dense, 0};
  switch (options.method) {
    case CountMethod::dense:
      if (n > options.max_dense) throw DimensionCap("matrix too large for dense inertia", n, options.max_dense);
      return count_dense(matrix, E);
    case CountMethod::schur:
      if (auto r = count_schur(matrix, E, options)) return *r;
      throw DimensionCap("non-dominant block too large for Schur inertia", n, options.max_schur_block);
    case CountMethod::sparse_ldlt:
      if (n > options.max_sparse_factor) throw DimensionCap("matrix too large for sparse LDL^T", n, options.max_sparse_factor);
      return count_sparse_ldlt(matrix, E);
    case CountMethod::automatic:
      break;
  }
  if (n <= options.max_dense) return count_dense(matrix, E);
  if (auto r = count_schur(matrix, E, options)) return *r;
  if (n <= options.max_sparse_factor) return count_sparse_ldlt(matrix, E);
  throw DimensionCap("no inertia route fits the configured limits", n, options.max_sparse_factor);
}

std::int64_t count_below(const SparseSymmetric& matrix, double E, const CountOptions& options) {
  return count_below_detailed(matrix, E, options).count;
}

// ---------------------------------------------------------------------------

std::vector<double> droplet_band(const SpectrumResult& spectrum, const SpinParams& params, std::int64_t vn2_x2) {
  if (!params.droplet_valid()) throw InvalidDelta("droplet band requires delta > M");
  const double upper = (1.0 - params.M() / params.delta()) * 0.5 * static_cast<double>(vn2_x2);
  std::vector<double> out;
  for (double v : spectrum.eigenvalues) {
    if (v > 0.0 && v < upper) out.push_back(v);
  }
  return out;
}

std::vector<Multiplet> group_multiplets(const std::vector<double>& ascending, double tol) {
  std::vector<Multiplet> out;
  double first = 0.0;
  for (double v : ascending) {
    if (!out.empty() && v - first <= tol) {
      ++out.back().multiplicity;
    } else {
      out.push_back({v, 1});
      first = v;
    }
  }
  return out;
}

namespace {
constexpr std::size_t kDenseNormLimit = 400;
}  // namespace

double spectral_norm(const SparseSymmetric& op, std::size_t max_dense) {
  if (op.dim() == 0) return 0.0;
  if (static_cast<std::size_t>(op.dim()) <= std::min<std::size_t>(max_dense, kDenseNormLimit)) {
    const auto s = dense_spectrum(op, max_dense);
    return std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
  }
  KrylovOptions opt;
  opt.guard = 0;
  const double lo = lowest_k(op, 1, opt).eigenvalues.front();
  const double hi = -lowest_k(op.scaled(-1.0), 1, opt).eigenvalues.front();
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace xxzgap
