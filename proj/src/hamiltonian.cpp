// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "xxzgap/config_graph.hpp"
#include "xxzgap/errors.hpp"

namespace xxzgap {

namespace {

std::int64_t full_dimension(int n_sites, int M, const Caps& caps) {
  std::uint64_t dim = 1;
  for (int x = 0; x < n_sites; ++x) {
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(dim, static_cast<std::uint64_t>(M + 1), &next)) next = SIZE_MAX;
    if (next > caps.max_full_space) {
      throw DimensionCap("full tensor-product space too large", next, caps.max_full_space);
    }
    dim = next;
  }
  return static_cast<std::int64_t>(dim);
}

// place values (M+1)^(n-1-x)
std::vector<std::int64_t> digit_weights(int n_sites, int M) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(n_sites));
  std::int64_t p = 1;
  for (int x = n_sites - 1; x >= 0; --x) {
    w[x] = p;
    p *= (M + 1);
  }
  return w;
}

void increment_digits(std::vector<int>& digits, int M) {
  for (int x = static_cast<int>(digits.size()) - 1; x >= 0; --x) {
    if (++digits[x] <= M) return;
    digits[x] = 0;
  }
}

}  // namespace

std::int64_t product_index(std::span<const int> occupations, int M) {
  std::int64_t idx = 0;
  for (int v : occupations) idx = idx * (M + 1) + v;
  return idx;
}

SectorBasis SectorBasis::build(int n_sites, int M, int N, const Caps& caps) {
  if (N < 0 || N > M * n_sites) throw InvalidParticleNumber("N outside [0, M n]");
  const std::int64_t dim = full_dimension(n_sites, M, caps);
  SectorBasis s;
  s.n_ = n_sites;
  s.M_ = M;
  s.N_ = N;
  std::vector<int> digits(static_cast<std::size_t>(n_sites), 0);
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    int sum = 0;
    for (int d : digits) sum += d;
    if (sum == N) s.indices_.push_back(idx);
    increment_digits(digits, M);
  }
  return s;
}

std::vector<int> SectorBasis::decode(std::int64_t product_index) const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int x = n_ - 1; x >= 0; --x) {
    out[x] = static_cast<int>(product_index % (M_ + 1));
    product_index /= (M_ + 1);
  }
  return out;
}

SparseSymmetric assemble_full(const BaseGraph& base, const SpinParams& params, std::span<const double> field,
                              const Caps& caps) {
  const int M = params.M();
  const int d = M + 1;
  const int n = base.n_vertices();
  const std::int64_t dim = full_dimension(n, M, caps);
  if (!field.empty() && static_cast<int>(field.size()) != n) {
    throw InvalidArgument("field size does not match the number of sites");
  }

  // Column-wise nonzeros of the pair kernel.
  const PairMatrix h = two_site_h(params);
  std::vector<std::vector<std::pair<int, double>>> kernel(static_cast<std::size_t>(d * d));
  for (int c = 0; c < d * d; ++c) {
    for (int r = 0; r < d * d; ++r) {
      if (h(r, c) != 0.0) kernel[c].emplace_back(r, h(r, c));
    }
  }

  const auto weights = digit_weights(n, M);
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(dim) * (base.n_edges() * 2 + 1));
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::int64_t s = 0; s < dim; ++s) {
    for (const auto& [x, y] : base.edges()) {
      const int a = digits[x], b = digits[y];
      for (const auto& [r, value] : kernel[a * d + b]) {
        const int a2 = r / d, b2 = r % d;
        const std::int64_t target = s + (a2 - a) * weights[x] + (b2 - b) * weights[y];
        t.emplace_back(target, s, value);
      }
    }
    if (!field.empty()) {
      double w = 0.0;
      for (int x = 0; x < n; ++x) w += field[x] * digits[x];
      if (w != 0.0) t.emplace_back(s, s, w);
    }
    increment_digits(digits, M);
  }
  if (t.size() > caps.max_nonzeros) throw DimensionCap("full Hamiltonian has too many nonzeros", t.size(), caps.max_nonzeros);
  return SparseSymmetric::from_triplets(dim, t);
}

Vector total_number_diagonal(int n_sites, int M) {
  Caps unlimited;
  unlimited.max_full_space = SIZE_MAX;
  const std::int64_t dim = full_dimension(n_sites, M, unlimited);
  Vector out(dim);
  std::vector<int> digits(static_cast<std::size_t>(n_sites), 0);
  for (std::int64_t s = 0; s < dim; ++s) {
    int sum = 0;
    for (int v : digits) sum += v;
    out(s) = sum;
    increment_digits(digits, M);
  }
  return out;
}

double number_commutator_defect(const SparseSymmetric& full, int n_sites, int M) {
  const Vector n = total_number_diagonal(n_sites, M);
  if (n.size() != full.dim()) throw InvalidArgument("operator does not match the tensor-product space");
  double out = 0.0;
  for (Eigen::Index i = 0; i < full.dim(); ++i) {
    full.for_each_in_row(i, [&](Eigen::Index j, double v) { out = std::max(out, std::abs(v * (n(j) - n(i)))); });
  }
  return out;
}

double off_sector_coupling(const SparseSymmetric& full, int n_sites, int M) {
  const Vector n = total_number_diagonal(n_sites, M);
  if (n.size() != full.dim()) throw InvalidArgument("operator does not match the tensor-product space");
  double out = 0.0;
  for (Eigen::Index i = 0; i < full.dim(); ++i) {
    full.for_each_in_row(i, [&](Eigen::Index j, double v) {
      if (n(i) != n(j)) out = std::max(out, std::abs(v));
    });
  }
  return out;
}

SparseSymmetric restrict(const SparseSymmetric& full, const SectorBasis& sector) {
  return full.principal(sector.indices());
}

EquivalenceReport equivalence_check(const BaseGraph& base, const SpinParams& params, int N,
                                    std::span<const double> field, const Caps& caps) {
  const int M = params.M();
  const SparseSymmetric full = assemble_full(base, params, field, caps);
  const SectorBasis sector = SectorBasis::build(base.n_vertices(), M, N, caps);
  const SparseSymmetric spin = restrict(full, sector);

  const ConfigSpace space = ConfigSpace::enumerate(base, M, N, caps);
  if (space.size() != sector.size()) throw Error("internal: sector and configuration space sizes differ");

  // U_N: psi_m -> phi_m as a permutation of basis positions.
  std::vector<std::int64_t> position(sector.size());
  bool identity = true;
  for (std::size_t p = 0; p < sector.size(); ++p) {
    const auto occ = sector.decode(sector.indices()[p]);
    const auto q = space.index_of(std::span<const int>(occ));
    if (!q) throw Error("internal: sector state missing from configuration space");
    position[p] = static_cast<std::int64_t>(*q);
    identity = identity && (*q == p);
  }
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(spin.nonzeros()));
  for (Eigen::Index p = 0; p < spin.dim(); ++p) {
    spin.for_each_in_row(p, [&](Eigen::Index c, double v) { t.emplace_back(position[p], position[c], v); });
  }
  const SparseSymmetric spin_permuted = SparseSymmetric::from_triplets(spin.dim(), t);

  const auto edges = build_edges(space, caps);
  const auto pot = potential(space);
  const SparseSymmetric schrodinger = assemble_hamiltonian(space, edges, pot, params.delta(), field, caps);

  EquivalenceReport report;
  report.max_abs_diff = max_abs_difference(spin_permuted, schrodinger);
  report.sector_dim = sector.size();
  report.full_dim = static_cast<std::size_t>(full.dim());
  report.order_matches = identity;
  return report;
}

}  // namespace xxzgap
