// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/config_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xxzgap/errors.hpp"

namespace xxzgap {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

std::vector<std::uint64_t> composition_table(int n, int M, int N) {
  const auto cols = static_cast<std::size_t>(N + 1);
  std::vector<std::uint64_t> t(static_cast<std::size_t>(n + 1) * cols, 0);
  t[0] = 1;
  for (int r = 1; r <= n; ++r) {
    for (int s = 0; s <= N; ++s) {
      std::uint64_t acc = 0;
      for (int v = 0; v <= std::min(M, s); ++v) acc = sat_add(acc, t[(r - 1) * cols + (s - v)]);
      t[r * cols + s] = acc;
    }
  }
  return t;
}

// Smallest lexicographic tail: particles packed towards the last site.
void fill_tail(std::vector<int>& m, int from, int sum, int M) {
  for (int x = static_cast<int>(m.size()) - 1; x >= from; --x) {
    const int take = std::min(M, sum);
    m[x] = take;
    sum -= take;
  }
}

bool next_composition(std::vector<int>& m, int M) {
  int suffix = 0;
  for (int x = static_cast<int>(m.size()) - 1; x >= 0; --x) {
    if (m[x] < M && suffix >= 1) {
      ++m[x];
      fill_tail(m, x + 1, suffix - 1, M);
      return true;
    }
    suffix += m[x];
  }
  return false;
}

}  // namespace

Configuration::Configuration(std::vector<int> occupations, int M) : occ_(std::move(occupations)) {
  for (int v : occ_) {
    if (v < 0 || v > M) {
      throw InvalidArgument("occupation " + std::to_string(v) + " outside [0, " + std::to_string(M) + "]");
    }
    total_ += v;
  }
}

Configuration::Configuration(std::vector<int> occupations, int M, int N)
    : Configuration(std::move(occupations), M) {
  if (total_ != N) {
    throw InvalidParticleNumber("configuration holds " + std::to_string(total_) + " particles, expected " +
                                std::to_string(N));
  }
}

std::string Configuration::to_array_string() const {
  std::string out = "(";
  for (std::size_t x = 0; x < occ_.size(); ++x) {
    if (x) out += ',';
    out += std::to_string(occ_[x]);
  }
  return out + ")";
}

std::uint64_t bounded_composition_count(int n, int M, int N) {
  if (n < 0 || M < 0 || N < 0) return 0;
  return composition_table(n, M, N).back();
}

ConfigSpace::ConfigSpace(const BaseGraph& base, int M, int N)
    : base_(base), M_(M), N_(N), n_(base.n_vertices()) {}

ConfigSpace ConfigSpace::enumerate(const BaseGraph& base, int M, int N, const Caps& caps) {
  if (M < 1 || M > 255) throw InvalidArgument("M must lie in [1, 255]");
  const int n = base.n_vertices();
  if (N < 0 || static_cast<long long>(N) > static_cast<long long>(M) * n) {
    throw InvalidParticleNumber("N = " + std::to_string(N) + " outside [0, " + std::to_string(M * n) + "]");
  }
  ConfigSpace space(base, M, N);
  space.counts_ = composition_table(n, M, N);
  const std::uint64_t total = space.count(n, N);
  if (total > caps.max_configs) {
    throw DimensionCap("configuration space too large", total == kSaturated ? SIZE_MAX : total,
                       caps.max_configs);
  }
  space.count_ = static_cast<std::size_t>(total);
  space.data_.resize(space.count_ * static_cast<std::size_t>(n));

  std::vector<int> m(static_cast<std::size_t>(n), 0);
  fill_tail(m, 0, N, M);
  std::size_t i = 0;
  do {
    std::copy(m.begin(), m.end(), space.data_.begin() + static_cast<std::ptrdiff_t>(i * n));
    ++i;
  } while (next_composition(m, M));
  if (i != space.count_) throw Error("internal: enumeration count mismatch");
  return space;
}

Configuration ConfigSpace::config(std::size_t i) const {
  auto occ = occupations(i);
  return Configuration(std::vector<int>(occ.begin(), occ.end()), M_, N_);
}

template <typename T>
std::optional<std::size_t> ConfigSpace::rank(std::span<const T> occ) const {
  if (static_cast<int>(occ.size()) != n_) return std::nullopt;
  std::uint64_t r = 0;
  int remaining = N_;
  for (int x = 0; x < n_; ++x) {
    const int v = static_cast<int>(occ[static_cast<std::size_t>(x)]);
    if (v < 0 || v > M_ || v > remaining) return std::nullopt;
    for (int u = 0; u < v; ++u) r += count(n_ - 1 - x, remaining - u);
    remaining -= v;
  }
  if (remaining != 0) return std::nullopt;
  return static_cast<std::size_t>(r);
}

std::optional<std::size_t> ConfigSpace::index_of(std::span<const int> occupations) const {
  return rank(occupations);
}

std::optional<std::size_t> ConfigSpace::index_of(std::span<const std::uint8_t> occupations) const {
  return rank(occupations);
}

std::vector<WeightedConfigEdge> build_edges(const ConfigSpace& space, const Caps& caps) {
  const int M = space.M();
  const int n = space.n_sites();
  const auto& base_edges = space.base().edges();
  std::vector<WeightedConfigEdge> out;
  std::vector<int> m(static_cast<std::size_t>(n));

  for (std::size_t i = 0; i < space.size(); ++i) {
    auto occ = space.occupations(i);
    std::copy(occ.begin(), occ.end(), m.begin());
    for (const auto& [u, v] : base_edges) {
      for (const auto& [from, to] : {std::pair{u, v}, std::pair{v, u}}) {
        const int a = m[from], b = m[to];
        if (a < 1 || b > M - 1) continue;
        --m[from];
        ++m[to];
        const auto j = *space.index_of(std::span<const int>(m));
        ++m[from];
        --m[to];
        if (j <= i) continue;
        const std::int64_t w4 = site_weight_factor_x2(M, a, a - 1) * site_weight_factor_x2(M, b, b + 1);
        out.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), w4,
                       0.5 * std::sqrt(static_cast<double>(w4))});
      }
    }
    if (space.size() + 2 * out.size() > caps.max_nonzeros) {
      throw DimensionCap("configuration graph has too many nonzeros", space.size() + 2 * out.size(),
                         caps.max_nonzeros);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.i != r.i ? l.i < r.i : l.j < r.j;
  });
  return out;
}

PotentialVector potential(const ConfigSpace& space) {
  const int M = space.M();
  PotentialVector out;
  out.values_x2.resize(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto occ = space.occupations(i);
    std::int64_t acc = 0;
    for (const auto& [x, y] : space.base().edges()) acc += pair_potential_x2(M, occ[x], occ[y]);
    out.values_x2[i] = acc;
  }
  return out;
}

Vector weighted_degree(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges) {
  Vector d = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (const auto& e : edges) {
    d(e.i) += e.weight;
    d(e.j) += e.weight;
  }
  return d;
}

Vector field_diagonal(const ConfigSpace& space, std::span<const double> field) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  if (field.empty()) return out;
  if (static_cast<int>(field.size()) != space.n_sites()) {
    throw InvalidArgument("field has " + std::to_string(field.size()) + " entries, graph has " +
                          std::to_string(space.n_sites()) + " sites");
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto occ = space.occupations(i);
    double acc = 0.0;
    for (std::size_t x = 0; x < occ.size(); ++x) acc += field[x] * occ[x];
    out(static_cast<Eigen::Index>(i)) = acc;
  }
  return out;
}

namespace {

void check_nonzeros(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges, const Caps& caps) {
  const std::size_t nnz = space.size() + 2 * edges.size();
  if (nnz > caps.max_nonzeros) throw DimensionCap("operator has too many nonzeros", nnz, caps.max_nonzeros);
  if (space.size() > caps.max_configs) {
    throw DimensionCap("configuration space too large", space.size(), caps.max_configs);
  }
}

SparseSymmetric assemble_offdiag_plus_diag(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                           double offdiag_scale, const Vector& diag) {
  std::vector<Triplet> t;
  t.reserve(2 * edges.size() + space.size());
  for (const auto& e : edges) {
    const double v = offdiag_scale * e.weight;
    t.emplace_back(e.i, e.j, v);
    t.emplace_back(e.j, e.i, v);
  }
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag(i) != 0.0) t.emplace_back(i, i, diag(i));
  }
  return SparseSymmetric::from_triplets(static_cast<Eigen::Index>(space.size()), t);
}

Vector potential_diagonal(const PotentialVector& pot) {
  Vector v(static_cast<Eigen::Index>(pot.size()));
  for (std::size_t i = 0; i < pot.size(); ++i) v(static_cast<Eigen::Index>(i)) = pot.value(i);
  return v;
}

}  // namespace

SparseSymmetric assemble_adjacency(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                   const Caps& caps) {
  check_nonzeros(space, edges, caps);
  return assemble_offdiag_plus_diag(space, edges, 1.0, Vector::Zero(static_cast<Eigen::Index>(space.size())));
}

SparseSymmetric assemble_hamiltonian(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                     const PotentialVector& pot, double delta, std::span<const double> field,
                                     const Caps& caps) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (pot.size() != space.size()) throw InvalidArgument("potential does not match configuration space");
  check_nonzeros(space, edges, caps);
  const Vector diag = potential_diagonal(pot) + field_diagonal(space, field);
  return assemble_offdiag_plus_diag(space, edges, -0.5 / delta, diag);
}

SchrodingerOperators assemble(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                              const PotentialVector& pot, double delta, std::span<const double> field,
                              const Caps& caps) {
  const Vector deg = weighted_degree(space, edges);
  SchrodingerOperators ops;
  ops.adjacency = assemble_adjacency(space, edges, caps);
  ops.degree = SparseSymmetric::diagonal(deg);
  ops.neg_laplacian = assemble_offdiag_plus_diag(space, edges, -1.0, deg);
  ops.hamiltonian = assemble_hamiltonian(space, edges, pot, delta, field, caps);
  return ops;
}

}  // namespace xxzgap
