// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/gap_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xxzgap/errors.hpp"

namespace xxzgap {

Partition droplet_set(const ConfigSpace& space, const PotentialVector& pot) {
  if (space.N() == 0) throw InvalidParticleNumber("droplet set needs N >= 1");
  if (pot.size() != space.size()) throw InvalidArgument("potential does not match the configuration space");
  Partition p;
  p.vn1_x2 = *std::min_element(pot.values_x2.begin(), pot.values_x2.end());
  p.in_v1.assign(pot.size(), 0);
  std::int64_t second = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < pot.size(); ++i) {
    if (pot.values_x2[i] == p.vn1_x2) {
      p.v1.push_back(static_cast<std::int64_t>(i));
      p.in_v1[i] = 1;
    } else {
      p.v2.push_back(static_cast<std::int64_t>(i));
      second = std::min(second, pot.values_x2[i]);
    }
  }
  if (!p.v2.empty()) p.vn2_x2 = second;
  return p;
}

std::vector<Configuration> chain_minimizer_family(int n, int M, int k) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  if (k < 2) throw InvalidParticleNumber("chain droplets need N = kM with k >= 2");
  if (n < k + 3) throw InvalidSize("chain droplets need n >= k + 3");
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(M));
  for (int p = 0; p < n; ++p) {
    for (int j = 1; j <= M; ++j) {
      std::vector<int> m(static_cast<std::size_t>(n), 0);
      m[p] = j;
      for (int s = 1; s < k; ++s) m[(p + s) % n] = M;
      m[(p + k) % n] = M - j;
      out.emplace_back(std::move(m), M, k * M);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Configuration> chain_minimizer_family_for(int n, int M, int N) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  if (N <= 0 || N % M != 0) throw InvalidParticleNumber("N must be a positive multiple of M");
  return chain_minimizer_family(n, M, N / M);
}

std::vector<Configuration> strip_rectangle_family(int n, int L, int M, int k) {
  if (M < 1 || L < 1) throw InvalidArgument("M and L must be at least 1");
  if (k < 1 || k >= n) throw InvalidParticleNumber("rectangle needs 1 <= k < n columns");
  std::vector<Configuration> out;
  for (int p = 0; p < n; ++p) {
    std::vector<int> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(L), 0);
    for (int s = 0; s < k; ++s) {
      for (int l = 0; l < L; ++l) m[static_cast<std::size_t>(((p + s) % n) * L + l)] = M;
    }
    out.emplace_back(std::move(m), M, k * L * M);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_strip_droplet_particle_number(int N, int L, int M) {
  if (N <= 0 || L < 1 || M < 1) return false;
  if (N % (L * M) != 0) return false;
  const int k = N / (L * M);
  return 2 * k >= L;
}

BoundaryQuantities boundary_quantities(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                       const Partition& partition, std::size_t max_dense) {
  if (partition.in_v1.size() != space.size()) throw InvalidArgument("partition does not match the configuration space");
  const std::size_t n = space.size();
  std::vector<std::int64_t> v1_pos(n, -1);
  for (std::size_t p = 0; p < partition.v1.size(); ++p) v1_pos[partition.v1[p]] = static_cast<std::int64_t>(p);

  std::vector<double> into_v2(n, 0.0), into_v1(n, 0.0);
  std::vector<std::int64_t> boundary_pos(n, -1);
  std::int64_t n_boundary = 0;
  std::vector<Triplet> a1, b;
  for (const auto& e : edges) {
    const bool i1 = partition.in_v1[e.i], j1 = partition.in_v1[e.j];
    if (i1 && j1) {
      a1.emplace_back(v1_pos[e.i], v1_pos[e.j], e.weight);
      a1.emplace_back(v1_pos[e.j], v1_pos[e.i], e.weight);
    } else if (i1 != j1) {
      const std::int32_t x = i1 ? e.i : e.j;  // in V1
      const std::int32_t y = i1 ? e.j : e.i;  // in V2
      into_v2[x] += e.weight;
      into_v1[y] += e.weight;
      if (boundary_pos[y] < 0) boundary_pos[y] = n_boundary++;
      b.emplace_back(v1_pos[x], boundary_pos[y], e.weight);
    }
  }

  BoundaryQuantities q;
  for (auto i : partition.v1) q.d1 = std::max(q.d1, into_v2[i]);
  for (auto i : partition.v2) q.d2 = std::max(q.d2, into_v1[i]);
  q.boundary_v2 = static_cast<std::size_t>(n_boundary);

  const auto n1 = static_cast<Eigen::Index>(partition.v1.size());
  if (n1 > 0 && !a1.empty()) {
    q.a1_norm = spectral_norm(SparseSymmetric::from_triplets(n1, a1), max_dense);
  }
  if (n1 > 0 && n_boundary > 0) {
    Eigen::SparseMatrix<double> B(n1, n_boundary);
    B.setFromTriplets(b.begin(), b.end());
    const CsrMatrix gram = n1 <= n_boundary ? CsrMatrix(B * B.transpose()) : CsrMatrix(B.transpose() * B);
    q.b_norm = std::sqrt(spectral_norm(SparseSymmetric(gram), max_dense));
  }
  return q;
}

std::string to_string(UpperBound b) { return b == UpperBound::potential ? "potential" : "degree"; }

bool GapCertificate::gap_condition(double E) const {
  if (!(E > u1_eff && E < u2_eff)) return false;
  return g * g * d1 * d2 < (u2_eff - E) * (E - u1_eff);
}

GapCertificate certificate(const Partition& partition, const BoundaryQuantities& quantities, const SpinParams& params,
                           int N, UpperBound bound, std::span<const double> weighted_degree,
                           std::span<const std::int64_t> potential_x2) {
  if (!params.droplet_valid()) throw InvalidDelta("gap certificate needs delta > M");
  GapCertificate c;
  c.M = params.M();
  c.N = N;
  c.delta = params.delta();
  c.g = 0.5 / params.delta();
  c.bound = bound;
  c.d1 = quantities.d1;
  c.d2 = quantities.d2;
  c.projection_lower_bound = static_cast<std::int64_t>(partition.v1.size());
  c.u1_eff = partition.vn1() + c.g * quantities.a1_norm;

  if (!partition.vn2_x2) {
    c.u2_eff = std::numeric_limits<double>::infinity();
    return c;
  }
  if (bound == UpperBound::potential) {
    c.u2_eff = (1.0 - params.M() / params.delta()) * *partition.vn2();
  } else {
    if (weighted_degree.size() != partition.in_v1.size() || potential_x2.size() != partition.in_v1.size()) {
      throw InvalidArgument("degree bound needs the weighted degree and potential of every configuration");
    }
    double best = std::numeric_limits<double>::infinity();
    for (auto i : partition.v2) best = std::min(best, 0.5 * static_cast<double>(potential_x2[i]) - c.g * weighted_degree[i]);
    c.u2_eff = best;
  }

  const double half = 0.5 * (c.u2_eff - c.u1_eff);
  const double coupling = c.g * c.g * c.d1 * c.d2;
  if (half > 0.0 && half * half > coupling) {
    const double mid = 0.5 * (c.u1_eff + c.u2_eff);
    const double r = std::sqrt(half * half - coupling);
    c.interval = std::make_pair(mid - r, mid + r);
  }
  return c;
}

VerificationReport verify_certificate(const GapCertificate& cert, const SpectrumResult& spectrum,
                                      const CountFunction& count_below, double margin) {
  VerificationReport r;
  r.v1_size = cert.projection_lower_bound;
  if (!cert.interval) {
    r.message = "no certified interval";
    return r;
  }
  r.has_interval = true;
  const auto [lo, hi] = *cert.interval;
  for (double lambda : spectrum.eigenvalues) {
    if (lambda > lo + margin && lambda < hi - margin) r.eigenvalues_inside.push_back(lambda);
  }
  r.covers_interval = !spectrum.eigenvalues.empty() && spectrum.eigenvalues.back() >= hi;
  if (!r.eigenvalues_inside.empty()) {
    r.passed = false;
    r.message = "computed eigenvalue inside the certified interval";
    throw CertificateViolation(r.message, r.eigenvalues_inside.front());
  }

  const double width = hi - lo;
  const double inset = std::max(margin, 1e-6 * width);
  try {
    r.count_near_lower = count_below(lo + inset);
    r.count_near_upper = count_below(hi - inset);
    r.count_at_midpoint = count_below(lo + 0.5 * width);
  } catch (const SingularShift&) {
    r.passed = false;
    r.message = "eigenvalue at an interior probe point";
    throw CertificateViolation(r.message, std::numeric_limits<double>::quiet_NaN());
  }
  if (r.count_near_lower != r.count_near_upper) {
    r.passed = false;
    r.message = "eigenvalue count changes across the certified interval";
    throw CertificateViolation(r.message, std::numeric_limits<double>::quiet_NaN());
  }
  if (r.count_at_midpoint < r.v1_size) {
    r.passed = false;
    r.message = "fewer eigenvalues below the interval than droplet configurations";
    throw CertificateViolation(r.message, std::numeric_limits<double>::quiet_NaN());
  }
  r.message = "verified";
  return r;
}

double chain_window_threshold(int M) { return std::pow(M, 3) + M; }
double chain_certified_threshold(int M) { return std::pow(M, 3) + 2.0 * std::pow(M, 1.5) + M; }
double strip_window_threshold(int L, int M) { return L * std::pow(M, 3) + M; }
double strip_certified_threshold(int L, int M) { return L * std::pow(M, 3) + (1.0 + std::sqrt(2.0 * L)) * M; }
double chain_d1_bound(int M) { return 4.0 * std::pow(M, 1.5); }
double chain_d2_bound(int M) { return std::pow(M, 1.5); }

}  // namespace xxzgap
