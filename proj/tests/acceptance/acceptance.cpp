// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "xxzgap/config_graph.hpp"
#include "xxzgap/errors.hpp"
#include "xxzgap/gap_analysis.hpp"
#include "xxzgap/hamiltonian.hpp"
#include "xxzgap/lattice.hpp"
#include "xxzgap/spectral.hpp"
#include "xxzgap/spin_algebra.hpp"

using namespace xxzgap;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " [failed: " << what << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Instance {
  std::string name;
  BaseGraph graph;
  int M;
  int N;
  double delta;
};

struct Built {
  ConfigSpace space;
  std::vector<WeightedConfigEdge> edges;
  PotentialVector pot;
};

Built build(const BaseGraph& g, int M, int N, const Caps& caps = {}) {
  auto s = ConfigSpace::enumerate(g, M, N, caps);
  auto e = build_edges(s, caps);
  auto p = potential(s);
  return {std::move(s), std::move(e), std::move(p)};
}

Caps large_caps() {
  Caps c;
  c.max_configs = 300'000;
  return c;
}

std::vector<std::pair<std::string, BaseGraph>> equivalence_graphs() {
  return {{"path(4)", BaseGraph::path(4)}, {"cycle(5)", BaseGraph::cycle(5)}, {"strip(3,2)", BaseGraph::strip(3, 2, false)}};
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 1. Sector-restricted spin Hamiltonian equals the configuration-graph operator.
Outcome criterion_1() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int cases = 0;
  for (const auto& [name, g] : equivalence_graphs()) {
    for (int M = 1; M <= 3; ++M) {
      for (int N = 1; N <= 3; ++N) {
        for (double delta : {2.0 * M, 10.0 * M}) {
          const auto r = equivalence_check(g, SpinParams(M, delta), N);
          worst = std::max(worst, r.max_abs_diff);
          ++cases;
        }
      }
    }
  }
  const double t = seconds_since(t0);
  o.require(worst <= 1e-10, "max diff " + fmt(worst) + " > 1e-10");
  o.require(t < 30.0, "runtime " + fmt(t) + " s");
  o.notes << " cases=" << cases << " max_diff=" << fmt(worst) << " time=" << fmt(t) << "s";
  return o;
}

// 2. Kernel of the pair Hamiltonian is span{e0 x e0, eM x eM}.
Outcome criterion_2() {
  Outcome o;
  double worst_sv = 0.0, worst_res = 0.0;
  for (int M = 1; M <= 6; ++M) {
    for (double delta : {M + 0.5, 2.0 * M}) {
      const Eigen::MatrixXd h = two_site_h(SpinParams(M, delta));
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeFullV);
      const Eigen::VectorXd sv = svd.singularValues();
      int kernel = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i) kernel += sv(i) < 1e-10;
      o.require(kernel == 2, "M=" + std::to_string(M) + " kernel dimension " + std::to_string(kernel));
      if (kernel != 2) continue;
      worst_sv = std::max(worst_sv, sv(sv.size() - 2));
      const int d = M + 1;
      Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(d * d, 2);
      expected(0, 0) = 1.0;
      expected(d * d - 1, 1) = 1.0;
      const Eigen::MatrixXd kernel_basis = svd.matrixV().rightCols(2);
      const Eigen::MatrixXd residual = kernel_basis - expected * (expected.transpose() * kernel_basis);
      worst_res = std::max(worst_res, residual.norm());
    }
  }
  o.require(worst_res <= 1e-10, "projection residual " + fmt(worst_res));
  o.notes << " max_kernel_sv=" << fmt(worst_sv) << " projection_residual=" << fmt(worst_res);
  return o;
}

// 3. Operator inequalities at the pair level and on configuration graphs.
Outcome criterion_3() {
  Outcome o;
  const double tol = -1e-10;
  double worst_pair = INFINITY, worst_graph = INFINITY, worst_induced = INFINITY, worst_h = INFINITY;
  for (int M = 1; M <= 6; ++M) {
    for (double delta : {M + 0.5, 2.0 * M, 10.0 * M}) {
      const SpinParams p(M, delta);
      const int d = M + 1;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
      const Eigen::MatrixXd ising = ising_part(p), hop = hopping_part(p), h = two_site_h(p);
      const double r = M / delta;
      const Eigen::MatrixXd number = kron(nloc(p), I) + kron(I, nloc(p));
      for (const Eigen::MatrixXd& m :
           {Eigen::MatrixXd(r * ising + (0.5 / delta) * hop), Eigen::MatrixXd(r * ising - (0.5 / delta) * hop),
            Eigen::MatrixXd(h - (1.0 - r) * ising), Eigen::MatrixXd((1.0 + r) * ising - h),
            Eigen::MatrixXd(0.5 * M * (1.0 + r) * number - h), h}) {
        worst_pair = std::min(worst_pair, min_eigenvalue(m));
      }
    }
  }

  std::vector<std::tuple<BaseGraph, int, int>> graphs;
  for (int M = 1; M <= 2; ++M) {
    for (int N = 1; N <= 4; ++N) graphs.emplace_back(BaseGraph::cycle(8), M, N);
  }
  for (const auto& [name, g] : equivalence_graphs()) {
    for (int M = 1; M <= 3; ++M) {
      for (int N = 1; N <= 3; ++N) graphs.emplace_back(g, M, N);
    }
  }
  for (const auto& [g, M, N] : graphs) {
    const auto b = build(g, M, N);
    const Eigen::MatrixXd A = assemble_adjacency(b.space, b.edges).to_dense();
    Eigen::MatrixXd bound = -A;
    for (std::size_t i = 0; i < b.space.size(); ++i) bound(i, i) += 2.0 * M * b.pot.value(i);
    worst_graph = std::min(worst_graph, min_eigenvalue(bound));

    // Induced subgraphs on the droplet set and on its complement.
    const auto part = droplet_set(b.space, b.pot);
    for (const auto* subset : {&part.v1, &part.v2}) {
      if (subset->empty()) continue;
      const auto n = static_cast<Eigen::Index>(subset->size());
      Eigen::MatrixXd sub(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = bound((*subset)[r], (*subset)[c]);
      }
      worst_induced = std::min(worst_induced, min_eigenvalue(sub));
    }
    for (double delta : {M + 0.5, 2.0 * M}) {
      worst_h = std::min(worst_h, min_eigenvalue(assemble_hamiltonian(b.space, b.edges, b.pot, delta).to_dense()));
    }
  }
  o.require(worst_pair >= tol, "pair inequality min eigenvalue " + fmt(worst_pair));
  o.require(worst_graph >= tol, "2M V - A min eigenvalue " + fmt(worst_graph));
  o.require(worst_induced >= tol, "induced 2M V - A' min eigenvalue " + fmt(worst_induced));
  o.require(worst_h >= tol, "sector Hamiltonian min eigenvalue " + fmt(worst_h));
  o.notes << " pair_min=" << fmt(worst_pair) << " 2MV-A_min=" << fmt(worst_graph)
          << " induced_min=" << fmt(worst_induced) << " H_min=" << fmt(worst_h);
  return o;
}

std::vector<Configuration> members(const ConfigSpace& s, const std::vector<std::int64_t>& idx) {
  std::vector<Configuration> out;
  for (auto i : idx) out.push_back(s.config(static_cast<std::size_t>(i)));
  std::sort(out.begin(), out.end());
  return out;
}

// 4. Chain minimizers on cycle(10), M = 2, N = 4.
Outcome criterion_4() {
  Outcome o;
  const auto t0 = Clock::now();
  const int M = 2;
  const auto b = build(BaseGraph::cycle(10), M, 4);
  // Exhaustive scan of the potential over every configuration.
  std::int64_t min_x2 = INT64_MAX, second_x2 = INT64_MAX;
  for (auto v : b.pot.values_x2) min_x2 = std::min(min_x2, v);
  for (auto v : b.pot.values_x2) {
    if (v != min_x2) second_x2 = std::min(second_x2, v);
  }
  std::vector<std::int64_t> argmin;
  bool second_has_shape = false;
  for (std::size_t i = 0; i < b.space.size(); ++i) {
    if (b.pot.values_x2[i] == min_x2) argmin.push_back(static_cast<std::int64_t>(i));
    if (b.pot.values_x2[i] == second_x2) {
      // (M, ..., M, M-1, 1) up to translation and reflection.
      const auto c = b.space.config(i).occupations();
      for (int p = 0; p < 10 && !second_has_shape; ++p) {
        for (int dir : {1, -1}) {
          auto at = [&](int s) { return c[static_cast<std::size_t>(((p + dir * s) % 10 + 10) % 10)]; };
          if (at(0) == M && at(1) == M - 1 && at(2) == 1) second_has_shape = true;
        }
      }
    }
  }
  const auto family = chain_minimizer_family(10, M, 2);
  const double t = seconds_since(t0);
  o.require(min_x2 == 8, "min 2V = " + std::to_string(min_x2));
  o.require(argmin.size() == 20, "minimizer count " + std::to_string(argmin.size()));
  o.require(members(b.space, argmin) == family, "minimizer set differs from the translate family");
  o.require(second_x2 == 10, "second 2V = " + std::to_string(second_x2));
  o.require(second_has_shape, "(M, M-1, 1) shape not found at the second level");
  o.require(t < 5.0, "runtime " + fmt(t) + " s");
  o.notes << " dim=" << b.space.size() << " min_V=" << 0.5 * min_x2 << " minimizers=" << argmin.size()
          << " second_V=" << 0.5 * second_x2 << " time=" << fmt(t) << "s";
  return o;
}

// 5. Rectangle minimizers on cylinder(8, 2), M = 2, N = 8.
Outcome criterion_5() {
  Outcome o;
  const int L = 2, M = 2;
  const auto b = build(BaseGraph::cylinder(8, L), M, 8, large_caps());
  const auto part = droplet_set(b.space, b.pot);
  const auto family = strip_rectangle_family(8, L, M, 2);
  o.require(part.vn1_x2 == 2 * L * M * M, "min V = " + fmt(part.vn1()));
  o.require(part.v1.size() == 8, "minimizer count " + std::to_string(part.v1.size()));
  o.require(members(b.space, part.v1) == family, "minimizer set differs from the rectangle translates");
  o.require(part.vn2_x2 && *part.vn2_x2 >= 2 * (L * M * M + 1), "second level below L M^2 + 1");
  o.notes << " dim=" << b.space.size() << " min_V=" << part.vn1() << " minimizers=" << part.v1.size()
          << " second_V=" << (part.vn2() ? fmt(*part.vn2()) : "none") << " (L M^2 + M = " << L * M * M + M << ")";
  return o;
}

// 6. Boundary quantities on the instances of criteria 4 and 5.
Outcome criterion_6() {
  Outcome o;
  {
    const int M = 2;
    const auto b = build(BaseGraph::cycle(10), M, 4);
    const auto part = droplet_set(b.space, b.pot);
    const auto q = boundary_quantities(b.space, b.edges, part);
    o.require(q.d1 <= chain_d1_bound(M) + 1e-12, "chain d1 = " + fmt(q.d1) + " > " + fmt(chain_d1_bound(M)));
    o.require(q.d2 <= chain_d2_bound(M) + 1e-12, "chain d2 = " + fmt(q.d2) + " > " + fmt(chain_d2_bound(M)));
    o.require(q.a1_norm == 0.0, "chain ||A1|| = " + fmt(q.a1_norm));
    o.require(q.b_norm <= std::sqrt(q.d1 * q.d2) + 1e-10, "chain ||B|| above sqrt(d1 d2)");
    o.notes << " chain: d1=" << fmt(q.d1) << " d2=" << fmt(q.d2) << " ||A1||=" << fmt(q.a1_norm)
            << " ||B||=" << fmt(q.b_norm) << " sqrt(d1d2)=" << fmt(std::sqrt(q.d1 * q.d2));
  }
  {
    const int L = 2, M = 2;
    const auto b = build(BaseGraph::cylinder(8, L), M, 8, large_caps());
    const auto part = droplet_set(b.space, b.pot);
    const auto q = boundary_quantities(b.space, b.edges, part);
    o.require(std::abs(q.d1 - 2.0 * L * M) <= 1e-12, "strip d1 = " + fmt(q.d1));
    o.require(std::abs(q.d2 - M) <= 1e-12, "strip d2 = " + fmt(q.d2));
    o.require(q.a1_norm == 0.0, "strip ||A1|| = " + fmt(q.a1_norm));
    o.require(q.b_norm <= std::sqrt(q.d1 * q.d2) + 1e-10, "strip ||B|| above sqrt(d1 d2)");
    o.notes << " strip: d1=" << fmt(q.d1) << " d2=" << fmt(q.d2) << " ||A1||=" << fmt(q.a1_norm)
            << " ||B||=" << fmt(q.b_norm);
  }
  return o;
}

// Spectrum that reaches past `ceiling`: dense when small, otherwise k lowest with k doubling.
SpectrumResult covering_spectrum(const SparseSymmetric& H, int k0, double ceiling) {
  if (static_cast<std::size_t>(H.dim()) <= Caps{}.max_dense) return dense_spectrum(H);
  for (int k = k0;; k *= 2) {
    k = std::min<int>(k, static_cast<int>(H.dim()));
    auto s = lowest_k(H, k);
    if (s.eigenvalues.back() > ceiling || k == H.dim()) return s;
  }
}

void certify_instance(Outcome& o, const std::string& label, const BaseGraph& g, int M, int N, double delta,
                      std::int64_t expected_count, const Caps& caps) {
  const auto t0 = Clock::now();
  const auto b = build(g, M, N, caps);
  const auto part = droplet_set(b.space, b.pot);
  const auto q = boundary_quantities(b.space, b.edges, part);
  const auto cert = certificate(part, q, SpinParams(M, delta), N);
  o.require(cert.interval.has_value(), label + " certified interval empty");
  if (!cert.interval) return;
  const auto H = assemble_hamiltonian(b.space, b.edges, b.pot, delta, {}, caps);
  const auto spectrum = covering_spectrum(H, static_cast<int>(part.v1.size()) + 1, cert.interval->second);
  const auto [lo, hi] = *cert.interval;
  int inside = 0;
  for (double e : spectrum.eigenvalues) inside += e > lo + 1e-8 && e < hi - 1e-8;
  const std::int64_t count = count_below(H, 0.5 * (lo + hi));
  const double t = seconds_since(t0);
  o.require(inside == 0, label + " eigenvalues inside: " + std::to_string(inside));
  o.require(spectrum.eigenvalues.back() > hi, label + " spectrum does not cover the interval");
  o.require(count >= expected_count, label + " count_below(mid) = " + std::to_string(count));
  o.require(t < 120.0, label + " runtime " + fmt(t) + " s");
  o.notes << ' ' << label << ": interval=[" << fmt(lo) << ", " << fmt(hi) << "] " << to_string(spectrum.method)
          << " eigenvalues=" << spectrum.eigenvalues.size() << " inside=" << inside << " count_below(mid)=" << count
          << " time=" << fmt(t) << "s";
}

// 7. Certified interval contains no eigenvalue.
Outcome criterion_7() {
  Outcome o;
  o.require(17.0 > chain_certified_threshold(2), "chain delta below threshold");
  o.require(23.0 > strip_certified_threshold(2, 2), "strip delta below threshold");
  certify_instance(o, "cycle(10)", BaseGraph::cycle(10), 2, 4, 17.0, 20, Caps{});
  certify_instance(o, "cylinder(8,2)", BaseGraph::cylinder(8, 2), 2, 8, 23.0, 8, large_caps());
  return o;
}

struct SectorCase {
  std::string graph;
  BaseGraph base;
  int M;
  int N;
  double delta;
  bool periodic;
};

std::vector<SectorCase> sector_cases() {
  std::vector<SectorCase> out;
  for (const auto& [name, g] : equivalence_graphs()) {
    const bool periodic = name == "cycle(5)";
    for (int M = 1; M <= 3; ++M) {
      const int n_max = periodic ? M * g.n_vertices() - 1 : 3;
      for (int N = 1; N <= n_max; ++N) {
        for (double delta : {2.0 * M, 10.0 * M}) out.push_back({name, g, M, N, delta, periodic});
      }
    }
  }
  for (int M = 1; M <= 2; ++M) {
    for (int N = 1; N <= 8 * M - 1; ++N) {
      for (double delta : {2.0 * M, 10.0 * M}) out.push_back({"cycle(8)", BaseGraph::cycle(8), M, N, delta, true});
    }
  }
  for (int N = 1; N <= 19; ++N) out.push_back({"cycle(10)", BaseGraph::cycle(10), 2, N, 17.0, true});
  out.push_back({"cylinder(8,2)", BaseGraph::cylinder(8, 2), 2, 8, 23.0, true});
  return out;
}

double lowest_eigenvalue(const SparseSymmetric& H) {
  if (static_cast<std::size_t>(H.dim()) <= 600) return dense_spectrum(H).eigenvalues.front();
  return lowest_k(H, 1).eigenvalues.front();
}

// 8. Ground-state gap above zero on periodic instances.
Outcome criterion_8() {
  Outcome o;
  int checked = 0;
  double worst_margin = INFINITY;
  for (const auto& c : sector_cases()) {
    if (!c.periodic) continue;
    const auto b = build(c.base, c.M, c.N, large_caps());
    const auto H = assemble_hamiltonian(b.space, b.edges, b.pot, c.delta, {}, large_caps());
    const double e0 = lowest_eigenvalue(H);
    const double bound = (1.0 - c.M / c.delta) * c.M / 2.0;
    worst_margin = std::min(worst_margin, e0 - bound);
    o.require(e0 > 0.0 && e0 >= bound - 1e-8, c.graph + " M=" + std::to_string(c.M) + " N=" + std::to_string(c.N) +
                                                  " delta=" + fmt(c.delta) + " E0=" + fmt(e0) + " < " + fmt(bound));
    ++checked;
  }
  o.notes << " instances=" << checked << " min(E0 - bound)=" << fmt(worst_margin);
  return o;
}

// 9. Sector norm bound.
Outcome criterion_9() {
  Outcome o;
  int checked = 0;
  double worst_slack = INFINITY;
  for (const auto& c : sector_cases()) {
    const auto b = build(c.base, c.M, c.N, large_caps());
    const auto H = assemble_hamiltonian(b.space, b.edges, b.pot, c.delta, {}, large_caps());
    const double norm = spectral_norm(H);
    const double bound = 0.5 * c.M * c.N * c.base.max_degree() * (1.0 + c.M / c.delta);
    worst_slack = std::min(worst_slack, bound - norm);
    o.require(norm <= bound + 1e-8, c.graph + " M=" + std::to_string(c.M) + " N=" + std::to_string(c.N) +
                                        " ||H||=" + fmt(norm) + " > " + fmt(bound));
    ++checked;
  }
  o.notes << " instances=" << checked << " min(bound - ||H||)=" << fmt(worst_slack);
  return o;
}

// 10. Configuration graph vs symmetric product; dense vs iterative eigenvalues.
Outcome criterion_10() {
  Outcome o;
  const auto g = BaseGraph::path(5);
  const auto s = ConfigSpace::enumerate(g, 1, 2);
  const auto edges = build_edges(s);
  const oracle::EdgeList el(g.edges().begin(), g.edges().end());
  const auto token = oracle::symmetric_product(5, el, 2);
  std::set<std::pair<std::set<int>, std::set<int>>> ours, theirs;
  auto support = [&](std::size_t i) {
    std::set<int> out;
    const auto c = s.config(i).occupations();
    for (std::size_t x = 0; x < c.size(); ++x) {
      if (c[x]) out.insert(static_cast<int>(x));
    }
    return out;
  };
  for (const auto& e : edges) {
    auto a = support(static_cast<std::size_t>(e.i)), b = support(static_cast<std::size_t>(e.j));
    ours.insert(std::min(a, b) == a ? std::pair{a, b} : std::pair{b, a});
  }
  for (const auto& [i, j] : token.edges) {
    const auto& a = token.vertices[i];
    const auto& b = token.vertices[j];
    theirs.insert(std::min(a, b) == a ? std::pair{a, b} : std::pair{b, a});
  }
  o.require(s.size() == 10 && token.vertices.size() == 10, "vertex count");
  o.require(ours == theirs, "edge sets differ");
  o.notes << " token_graph: vertices=" << s.size() << " edges=" << ours.size();

  int compared = 0;
  double worst = 0.0;
  for (const auto& c : sector_cases()) {
    const auto b = build(c.base, c.M, c.N, large_caps());
    if (b.space.size() > Caps{}.max_dense) continue;
    const auto H = assemble_hamiltonian(b.space, b.edges, b.pot, c.delta);
    const int k = static_cast<int>(std::min<std::size_t>(b.space.size(), 10));
    const auto dense = dense_spectrum(H);
    const auto iter = lowest_k(H, k);
    for (int i = 0; i < k; ++i) worst = std::max(worst, std::abs(dense.eigenvalues[i] - iter.eigenvalues[i]));
    ++compared;
  }
  o.require(worst <= 1e-8, "dense vs iterative max diff " + fmt(worst));
  o.notes << " solver_instances=" << compared << " max_diff=" << fmt(worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"equivalence", criterion_1},      {"pair kernel", criterion_2},
      {"operator inequalities", criterion_3}, {"chain minimizers", criterion_4},
      {"strip minimizers", criterion_5}, {"boundary quantities", criterion_6},
      {"certificate vs spectrum", criterion_7}, {"ground-state gap", criterion_8},
      {"norm bound", criterion_9},       {"cross-construction", criterion_10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("%s %zu %s:%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.notes.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
