// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "xxzgap/config_graph.hpp"
#include "xxzgap/errors.hpp"
#include "xxzgap/spectral.hpp"

using namespace xxzgap;

namespace {

SparseSymmetric sector_h(const BaseGraph& g, int M, int N, double delta) {
  const auto s = ConfigSpace::enumerate(g, M, N);
  return assemble_hamiltonian(s, build_edges(s), potential(s), delta);
}

SparseSymmetric random_sparse(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 4.0 * u(rng));
    for (int r = 0; r < 3; ++r) {
      const int j = static_cast<int>(rng() % static_cast<std::uint32_t>(n));
      if (j == i) continue;
      const double v = 0.5 * u(rng);
      t.emplace_back(i, j, v);
      t.emplace_back(j, i, v);
    }
  }
  return SparseSymmetric::from_triplets(n, t);
}

}  // namespace

TEST_CASE("dense spectrum basics") {
  CHECK(dense_spectrum(DenseMatrix::Zero(1, 1)).eigenvalues == std::vector<double>{0.0});
  Vector d(4);
  d << 3.0, -1.0, 2.0, 0.5;
  const auto s = dense_spectrum(SparseSymmetric::diagonal(d));
  CHECK(s.eigenvalues == std::vector<double>{-1.0, 0.5, 2.0, 3.0});
  const double delta = 4.0;
  const auto two = dense_spectrum(sector_h(BaseGraph::path(2), 1, 1, delta));
  CHECK(two.eigenvalues[0] == doctest::Approx(0.5 - 0.5 / delta));
  CHECK(two.eigenvalues[1] == doctest::Approx(0.5 + 0.5 / delta));
  CHECK(two.max_residual() <= 1e-9);
  CHECK_THROWS_AS(dense_spectrum(DenseMatrix::Zero(10, 10), 5), DimensionCap);
}

TEST_CASE("iterative solver agrees with dense") {
  const auto H = sector_h(BaseGraph::cycle(8), 2, 4, 4.0);
  const auto dense = dense_spectrum(H);
  const auto it = lowest_k(H, 10);
  REQUIRE(it.eigenvalues.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(it.eigenvalues[i] - dense.eigenvalues[i]) <= 1e-8);
  CHECK(it.max_residual() <= 1e-9);
  CHECK(it.eigenvalues.front() >= -1e-8);
}

TEST_CASE("iterative solver on unstructured operators and full k") {
  for (std::uint32_t seed : {1u, 2u, 3u}) {
    const auto A = random_sparse(300, seed);
    const auto dense = dense_spectrum(A);
    const auto it = lowest_k(A, 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(it.eigenvalues[i] - dense.eigenvalues[i]) <= 1e-8);
  }
  const auto H = sector_h(BaseGraph::path(4), 2, 3, 5.0);
  const auto all = lowest_k(H, static_cast<int>(H.dim()));
  const auto dense = dense_spectrum(H);
  REQUIRE(all.eigenvalues.size() == dense.eigenvalues.size());
  for (std::size_t i = 0; i < all.eigenvalues.size(); ++i) {
    CHECK(std::abs(all.eigenvalues[i] - dense.eigenvalues[i]) <= 1e-8);
  }
  CHECK_THROWS_AS(lowest_k(H, 0), InvalidArgument);
}

TEST_CASE("iterative solver is deterministic for a fixed seed") {
  const auto H = sector_h(BaseGraph::cycle(7), 2, 3, 3.0);
  KrylovOptions o;
  o.seed = 99;
  const auto a = lowest_k(H, 5, o);
  const auto b = lowest_k(H, 5, o);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.residual_norms == b.residual_norms);
}

TEST_CASE("iterative solver resolves the near-degenerate droplet band") {
  const auto H = sector_h(BaseGraph::cycle(10), 2, 4, 17.0);
  const auto dense = dense_spectrum(H);
  const auto it = lowest_k(H, 22);
  for (std::size_t i = 0; i < 22; ++i) CHECK(std::abs(it.eigenvalues[i] - dense.eigenvalues[i]) <= 1e-8);
}

TEST_CASE("inertia counts") {
  DenseMatrix m(3, 3);
  m << 0, 1, 0, 1, 0, 0, 0, 0, -2;
  const auto in = dense_inertia(m, 1e-12);
  CHECK(in.negative == 2);
  CHECK(in.positive == 1);
  CHECK(in.zero == 0);
}

TEST_CASE("count below agrees with dense spectra on every route") {
  std::vector<SparseSymmetric> ops{sector_h(BaseGraph::cycle(8), 2, 4, 4.0), sector_h(BaseGraph::cycle(10), 2, 4, 17.0),
                                   sector_h(BaseGraph::strip(3, 2, false), 2, 3, 6.0), random_sparse(200, 5)};
  for (const auto& H : ops) {
    const auto ev = dense_spectrum(H).eigenvalues;
    std::vector<double> probes{ev.front() - 1.0, ev.back() + 1.0};
    for (std::size_t i = 0; i + 1 < ev.size(); i += std::max<std::size_t>(1, ev.size() / 25)) {
      if (ev[i + 1] - ev[i] > 1e-6) probes.push_back(0.5 * (ev[i] + ev[i + 1]));
    }
    std::int64_t last = -1;
    std::sort(probes.begin(), probes.end());
    for (double E : probes) {
      const auto expected = static_cast<std::int64_t>(std::lower_bound(ev.begin(), ev.end(), E) - ev.begin());
      for (auto method : {CountMethod::automatic, CountMethod::dense, CountMethod::sparse_ldlt}) {
        CountOptions o;
        o.method = method;
        CHECK(count_below(H, E, o) == expected);
      }
      CountOptions schur;
      schur.method = CountMethod::schur;
      schur.max_schur_block = static_cast<std::size_t>(H.dim());
      CHECK(count_below(H, E, schur) == expected);
      CHECK(expected >= last);
      last = expected;
    }
  }
}

TEST_CASE("count below routes and errors") {
  const auto H = sector_h(BaseGraph::cycle(10), 2, 4, 17.0);
  CountOptions o;
  o.max_dense = 10;
  const auto r = count_below_detailed(H, 4.2, o);
  CHECK(r.method == CountMethod::schur);
  CHECK(r.count == 20);
  CHECK(r.schur_block < static_cast<std::size_t>(H.dim()));
  CHECK(count_below(H, -1.0) == 0);
  CHECK_THROWS_AS(count_below(SparseSymmetric::diagonal(Vector::Ones(3)), 1.0), SingularShift);
  CountOptions none;
  none.max_dense = 1;
  none.max_schur_block = 0;
  none.max_sparse_factor = 1;
  CHECK_THROWS_AS(count_below(H, 4.2, none), DimensionCap);
}

TEST_CASE("multiplets and droplet band") {
  const auto groups = group_multiplets({0.0, 1.0, 1.0 + 5e-8, 1.0 + 9e-8, 2.0});
  REQUIRE(groups.size() == 3);
  CHECK(groups[1].multiplicity == 3);
  CHECK(groups[1].value == 1.0);

  const SpinParams p(2, 17.0);
  const auto H = sector_h(BaseGraph::cycle(10), 2, 4, 17.0);
  const auto s = dense_spectrum(H);
  const auto band = droplet_band(s, p, 10);
  REQUIRE(!band.empty());
  CHECK(band.size() >= 20);
  for (double v : band) {
    CHECK(v > 0.0);
    CHECK(v < (1.0 - 2.0 / 17.0) * 5.0);
    CHECK(v >= (1.0 - 2.0 / 17.0) * 1.0 - 1e-8);
  }
  CHECK_THROWS_AS(droplet_band(s, SpinParams(2, 2.0), 10), InvalidDelta);
}

TEST_CASE("ground-state gap on periodic instances") {
  for (int n = 3; n <= 8; ++n) {
    for (int M = 1; M <= 2; ++M) {
      for (double delta : {M + 0.5, 2.0 * M, 10.0 * M}) {
        for (int N = 1; N <= std::min(M * n - 1, 5); ++N) {
          const auto ev = dense_spectrum(sector_h(BaseGraph::cycle(n), M, N, delta)).eigenvalues;
          const double bound = (1.0 - M / delta) * 0.5 * M;
          for (double v : ev) {
            if (v > 1e-9) {
              CHECK(v >= bound - 1e-8);
              break;
            }
          }
        }
      }
    }
  }
}

TEST_CASE("spectral norm") {
  const auto H = sector_h(BaseGraph::cycle(8), 2, 4, 4.0);
  const auto ev = dense_spectrum(H).eigenvalues;
  CHECK(spectral_norm(H) == doctest::Approx(std::max(std::abs(ev.front()), std::abs(ev.back()))));
  CHECK(spectral_norm(H, 10) == doctest::Approx(std::max(std::abs(ev.front()), std::abs(ev.back()))).epsilon(1e-9));
}
