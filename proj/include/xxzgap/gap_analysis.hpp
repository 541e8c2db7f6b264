// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xxzgap/config_graph.hpp"
#include "xxzgap/spectral.hpp"
#include "xxzgap/spin_algebra.hpp"

namespace xxzgap {

/// Split of the configurations into the droplet set V1 (exact argmin of the
/// potential) and its complement V2.
struct Partition {
  std::vector<std::int64_t> v1;  // ascending
  std::vector<std::int64_t> v2;  // ascending
  std::vector<char> in_v1;
  std::int64_t vn1_x2 = 0;
  /// Absent iff V2 is empty.
  std::optional<std::int64_t> vn2_x2;

  double vn1() const { return 0.5 * static_cast<double>(vn1_x2); }
  std::optional<double> vn2() const {
    return vn2_x2 ? std::optional<double>(0.5 * static_cast<double>(*vn2_x2)) : std::nullopt;
  }
};

/// Throws InvalidParticleNumber for N = 0.
Partition droplet_set(const ConfigSpace& space, const PotentialVector& pot);

/// All n*M translates on cycle(n) of the chain minimizers with N = kM:
/// value j at one end, k-1 fully occupied sites, M-j at the other end.
/// Sorted ascending. Requires k >= 2 and n >= k + 3.
std::vector<Configuration> chain_minimizer_family(int n, int M, int k);
/// Same, from a particle number; InvalidParticleNumber unless N = kM.
std::vector<Configuration> chain_minimizer_family_for(int n, int M, int N);

/// The n translates on cylinder(n, L) of k fully occupied adjacent columns.
/// Requires 1 <= k < n.
std::vector<Configuration> strip_rectangle_family(int n, int L, int M, int k);

/// True iff N = kLM with k >= L/2.
bool is_strip_droplet_particle_number(int N, int L, int M);

struct BoundaryQuantities {
  double d1 = 0.0;       // max over V1 of summed weights into V2
  double d2 = 0.0;       // max over V2 of summed weights into V1
  double a1_norm = 0.0;  // ||A_1||, induced weighted adjacency on V1
  double b_norm = 0.0;   // ||B||, boundary hopping block V2 -> V1
  std::size_t boundary_v2 = 0;  // V2 configurations adjacent to V1
};

BoundaryQuantities boundary_quantities(const ConfigSpace& space, const std::vector<WeightedConfigEdge>& edges,
                                       const Partition& partition, std::size_t max_dense = Caps{}.max_dense);

/// Multiplication operator C with A_2 <= C used in the a-priori window.
enum class UpperBound {
  potential,  // C = 2M V_N
  degree,     // C = D_N, the weighted degree
};

std::string to_string(UpperBound b);

struct GapCertificate {
  int M = 0;
  int N = 0;
  double delta = 0.0;
  double g = 0.0;       // 1 / (2 delta)
  double u1_eff = 0.0;  // sup_{V1} U + g ||A_1||
  double u2_eff = 0.0;  // inf_{V2} (U - g C); +inf when V2 is empty
  double d1 = 0.0;
  double d2 = 0.0;
  UpperBound bound = UpperBound::potential;
  std::optional<std::pair<double, double>> interval;
  std::int64_t projection_lower_bound = 0;  // |V1|

  bool window_nonempty() const { return u2_eff > u1_eff; }
  /// True iff E lies in the a-priori window and satisfies the quadratic gap condition.
  bool gap_condition(double E) const;
};

/// Throws InvalidDelta unless delta > M. The degree bound needs the
/// weighted degree of every configuration.
GapCertificate certificate(const Partition& partition, const BoundaryQuantities& quantities,
                           const SpinParams& params, int N, UpperBound bound = UpperBound::potential,
                           std::span<const double> weighted_degree = {},
                           std::span<const std::int64_t> potential_x2 = {});

struct VerificationReport {
  bool has_interval = false;
  bool covers_interval = false;  // spectrum reaches past the upper end
  std::vector<double> eigenvalues_inside;
  std::int64_t count_at_midpoint = 0;
  std::int64_t count_near_lower = 0;
  std::int64_t count_near_upper = 0;
  std::int64_t v1_size = 0;
  bool passed = true;
  std::string message;
};

using CountFunction = std::function<std::int64_t(double)>;

/// Checks a certificate against a computed spectrum and an exact eigenvalue
/// counter: no eigenvalue inside the interval (margin), equal counts just
/// inside both ends, and at least |V1| eigenvalues below the midpoint.
/// Throws CertificateViolation on failure.
VerificationReport verify_certificate(const GapCertificate& cert, const SpectrumResult& spectrum,
                                      const CountFunction& count_below, double margin = 1e-8);

/// Closed-form thresholds from the chain and strip analyses.
double chain_window_threshold(int M);                 // M^3 + M
double chain_certified_threshold(int M);              // M^3 + 2 M^{3/2} + M
double strip_window_threshold(int L, int M);          // L M^3 + M
double strip_certified_threshold(int L, int M);       // L M^3 + (1 + sqrt(2L)) M
double chain_d1_bound(int M);                         // 4 M^{3/2}
double chain_d2_bound(int M);                         // M^{3/2}

}  // namespace xxzgap
