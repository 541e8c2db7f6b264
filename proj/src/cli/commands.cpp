// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "xxzgap/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "xxzgap/config_graph.hpp"
#include "xxzgap/errors.hpp"
#include "xxzgap/gap_analysis.hpp"
#include "xxzgap/hamiltonian.hpp"
#include "xxzgap/serialization.hpp"
#include "xxzgap/spectral.hpp"

namespace xxzgap::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr double kEquivalenceTol = 1e-10;

Json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

struct Instance {
  BaseGraph base;
  SpinParams params;
  ConfigSpace space;
  std::vector<WeightedConfigEdge> edges;
  PotentialVector pot;
  std::vector<double> field;
};

Instance load_instance(const RunConfig& cfg, int N, double delta) {
  BaseGraph base = build_graph(cfg.graph);
  SpinParams params(*cfg.M, delta);
  ConfigSpace space = ConfigSpace::enumerate(base, *cfg.M, N, cfg.caps);
  auto edges = build_edges(space, cfg.caps);
  auto pot = potential(space);
  std::vector<double> field;
  if (!cfg.field_file.empty()) field = read_field_file(cfg.field_file, base.n_vertices());
  return {std::move(base), params, std::move(space), std::move(edges), std::move(pot), std::move(field)};
}

SparseSymmetric hamiltonian_of(const Instance& in, double delta, const Caps& caps) {
  return assemble_hamiltonian(in.space, in.edges, in.pot, delta, in.field, caps);
}

KrylovOptions krylov_options(const RunConfig& cfg) {
  KrylovOptions o;
  o.seed = cfg.seed;
  return o;
}

/// Dense when no k is requested, k lowest otherwise.
SpectrumResult compute_spectrum(const SparseSymmetric& H, const RunConfig& cfg, int k) {
  if (k > 0) return lowest_k(H, std::min<int>(k, static_cast<int>(H.dim())), krylov_options(cfg));
  return dense_spectrum(H, cfg.caps.max_dense);
}

/// Spectrum reaching at least up to `upper`, growing k when iterative.
SpectrumResult spectrum_covering(const SparseSymmetric& H, const RunConfig& cfg, int k_start, double upper) {
  if (static_cast<std::size_t>(H.dim()) <= cfg.caps.max_dense && cfg.k_lowest == 0) {
    return dense_spectrum(H, cfg.caps.max_dense);
  }
  int k = std::max(1, k_start);
  for (;;) {
    SpectrumResult s = compute_spectrum(H, cfg, k);
    if (s.eigenvalues.empty() || s.eigenvalues.back() >= upper || k >= H.dim() || k >= 4096) return s;
    k *= 2;
  }
}

std::optional<std::pair<int, int>> cylinder_dims(const std::string& spec) {
  if (spec.rfind("cylinder:", 0) != 0) return std::nullopt;
  const std::string arg = spec.substr(9);
  const auto x = arg.find('x');
  if (x == std::string::npos) return std::nullopt;
  return std::make_pair(std::stoi(arg.substr(0, x)), std::stoi(arg.substr(x + 1)));
}

std::optional<int> cycle_length(const std::string& spec) {
  if (spec.rfind("cycle:", 0) != 0) return std::nullopt;
  return std::stoi(spec.substr(6));
}

void check_mode(const RunConfig& cfg, int N) {
  if (cfg.mode == Mode::chain_droplet) {
    if (!cycle_length(cfg.graph)) throw InvalidGraph("chain-droplet mode needs a cycle graph");
    if (N <= 0 || N % *cfg.M != 0) throw InvalidParticleNumber("chain-droplet mode needs N = kM");
  } else if (cfg.mode == Mode::strip_droplet) {
    const auto dims = cylinder_dims(cfg.graph);
    if (!dims) throw InvalidGraph("strip-droplet mode needs a cylinder graph");
    if (!is_strip_droplet_particle_number(N, dims->second, *cfg.M)) {
      throw InvalidParticleNumber("strip-droplet mode needs N = kLM with k >= L/2");
    }
  }
}

std::optional<double> reference_threshold(const RunConfig& cfg) {
  if (cfg.mode == Mode::chain_droplet) return chain_certified_threshold(*cfg.M);
  if (cfg.mode == Mode::strip_droplet) return strip_certified_threshold(cylinder_dims(cfg.graph)->second, *cfg.M);
  return std::nullopt;
}

int single_n(const RunConfig& cfg) {
  if (cfg.N->first != cfg.N->second) throw InvalidArgument(cfg.command + " takes a single N");
  return cfg.N->first;
}

struct EquivalenceCase {
  std::string graph;
  int M;
  int N;
  double delta;
};

std::vector<EquivalenceCase> equivalence_cases(const RunConfig& cfg) {
  std::vector<EquivalenceCase> cases;
  if (cfg.graph.empty()) {
    for (const char* g : {"path:4", "cycle:5", "strip:3x2"}) {
      for (int M = 1; M <= 3; ++M) {
        for (int N = 1; N <= 3; ++N) {
          for (double d : {2.0 * M, 10.0 * M}) cases.push_back({g, M, N, d});
        }
      }
    }
    return cases;
  }
  std::vector<double> deltas;
  if (cfg.delta) {
    deltas = {*cfg.delta};
  } else if (cfg.delta_range) {
    deltas = cfg.delta_range->values();
  } else {
    deltas = {2.0 * *cfg.M, 10.0 * *cfg.M};
  }
  for (int N = cfg.N->first; N <= cfg.N->second; ++N) {
    for (double d : deltas) cases.push_back({cfg.graph, *cfg.M, N, d});
  }
  return cases;
}

}  // namespace

int cmd_equivalence(const RunConfig& cfg, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Json rows = Json::array();
  bool all_pass = true;
  for (const auto& c : equivalence_cases(cfg)) {
    const BaseGraph base = build_graph(c.graph);
    std::vector<double> field;
    if (!cfg.field_file.empty()) field = read_field_file(cfg.field_file, base.n_vertices());
    const auto report = equivalence_check(base, SpinParams(c.M, c.delta), c.N, field, cfg.caps);
    const bool pass = report.max_abs_diff <= kEquivalenceTol;
    all_pass = all_pass && pass;
    Json row;
    row["graph"] = base.name();
    row["M"] = c.M;
    row["N"] = c.N;
    row["delta"] = c.delta;
    row["sector_dim"] = report.sector_dim;
    row["full_dim"] = report.full_dim;
    row["max_abs_diff"] = report.max_abs_diff;
    row["pass"] = pass;
    rows.push_back(std::move(row));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json doc;
  doc["command"] = "equivalence";
  doc["tolerance"] = kEquivalenceTol;
  doc["cases"] = std::move(rows);
  doc["all_pass"] = all_pass;
  doc["wall_time_s"] = elapsed;
  out << doc.dump(2) << '\n';
  return all_pass ? kOk : kCheckFailed;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const int N = single_n(cfg);
  const Instance in = load_instance(cfg, N, *cfg.delta);
  const SparseSymmetric H = hamiltonian_of(in, *cfg.delta, cfg.caps);
  const SpectrumResult s = compute_spectrum(H, cfg, cfg.k_lowest);
  if (cfg.multiplets) {
    for (const auto& m : group_multiplets(s.eigenvalues)) out << format_double(m.value) << ',' << m.multiplicity << '\n';
  } else {
    for (double v : s.eigenvalues) out << format_double(v) << '\n';
  }
  return kOk;
}

int cmd_droplets(const RunConfig& cfg, std::ostream& out) {
  const int N = single_n(cfg);
  check_mode(cfg, N);
  const BaseGraph base = build_graph(cfg.graph);
  const ConfigSpace space = ConfigSpace::enumerate(base, *cfg.M, N, cfg.caps);
  const PotentialVector pot = potential(space);
  const Partition part = droplet_set(space, pot);

  Json doc;
  doc["command"] = "droplets";
  doc["graph"] = base.name();
  doc["M"] = *cfg.M;
  doc["N"] = N;
  doc["dim"] = space.size();
  doc["VN1"] = part.vn1();
  doc["VN2"] = number_or_null(part.vn2());
  doc["v1_size"] = part.v1.size();
  Json minimizers = Json::array();
  for (auto i : part.v1) minimizers.push_back(space.config(static_cast<std::size_t>(i)).to_array_string());
  doc["minimizers"] = std::move(minimizers);

  std::size_t second_count = 0;
  Json second = Json::array();
  if (part.vn2_x2) {
    for (auto i : part.v2) {
      if (pot.values_x2[static_cast<std::size_t>(i)] != *part.vn2_x2) continue;
      if (second_count++ < 64) second.push_back(space.config(static_cast<std::size_t>(i)).to_array_string());
    }
  }
  doc["second_level_size"] = second_count;
  doc["second_level_examples"] = std::move(second);

  doc["mode"] = to_string(cfg.mode);
  std::optional<std::vector<Configuration>> family;
  if (cfg.mode == Mode::chain_droplet) {
    family = chain_minimizer_family_for(*cycle_length(cfg.graph), *cfg.M, N);
  } else if (cfg.mode == Mode::strip_droplet) {
    const auto [n, L] = *cylinder_dims(cfg.graph);
    family = strip_rectangle_family(n, L, *cfg.M, N / (L * *cfg.M));
  }
  if (family) {
    std::vector<Configuration> found;
    for (auto i : part.v1) found.push_back(space.config(static_cast<std::size_t>(i)));
    doc["family_match"] = (found == *family);
  } else {
    doc["family_match"] = nullptr;
  }
  out << doc.dump(2) << '\n';
  return family && !doc["family_match"].get<bool>() ? kCheckFailed : kOk;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const int N = single_n(cfg);
  check_mode(cfg, N);
  if (!cfg.field_file.empty()) throw InvalidArgument("certify does not take a field");
  const Instance in = load_instance(cfg, N, *cfg.delta);
  const Partition part = droplet_set(in.space, in.pot);
  const BoundaryQuantities q = boundary_quantities(in.space, in.edges, part, cfg.caps.max_dense);
  const Vector degree = weighted_degree(in.space, in.edges);
  const GapCertificate cert =
      certificate(part, q, in.params, N, cfg.bound, std::span<const double>(degree.data(), degree.size()),
                  in.pot.values_x2);

  Json doc;
  doc["M"] = *cfg.M;
  doc["N"] = N;
  doc["delta"] = *cfg.delta;
  doc["graph"] = in.base.name();
  doc["VN1"] = part.vn1();
  doc["VN2"] = number_or_null(part.vn2());
  doc["d1"] = q.d1;
  doc["d2"] = q.d2;
  doc["a1_norm"] = q.a1_norm;
  doc["b_norm"] = q.b_norm;
  doc["interval"] = cert.interval ? Json::array({cert.interval->first, cert.interval->second}) : Json(nullptr);
  doc["v1_size"] = part.v1.size();
  doc["bound"] = to_string(cert.bound);
  doc["u1_eff"] = cert.u1_eff;
  doc["u2_eff"] = number_or_null(cert.u2_eff);
  doc["reference_threshold"] = number_or_null(reference_threshold(cfg));

  int code = kOk;
  bool verified = false;
  Json check;
  if (cert.interval) {
    const SparseSymmetric H = hamiltonian_of(in, *cfg.delta, cfg.caps);
    const int k0 = cfg.k_lowest > 0 ? cfg.k_lowest : static_cast<int>(part.v1.size()) + 1;
    const SpectrumResult s = spectrum_covering(H, cfg, k0, cert.interval->second);
    CountOptions copt;
    copt.max_dense = cfg.caps.max_dense;
    const CountFunction counter = [&](double E) { return count_below(H, E, copt); };
    check["spectrum_method"] = to_string(s.method);
    check["eigenvalues_computed"] = s.eigenvalues.size();
    try {
      const VerificationReport r = verify_certificate(cert, s, counter);
      verified = r.passed;
      check["covers_interval"] = r.covers_interval;
      check["count_at_midpoint"] = r.count_at_midpoint;
      check["count_near_lower"] = r.count_near_lower;
      check["count_near_upper"] = r.count_near_upper;
      check["message"] = r.message;
    } catch (const CertificateViolation& e) {
      check["message"] = e.what();
      check["eigenvalue"] = number_or_null(e.eigenvalue());
      code = kCheckFailed;
    }
  } else {
    check["message"] = "no certified interval";
  }
  doc["verified"] = verified;
  doc["verification"] = std::move(check);
  out << doc.dump(2) << '\n';
  return code;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const int N = single_n(cfg);
  check_mode(cfg, N);
  if (!cfg.field_file.empty()) throw InvalidArgument("sweep does not take a field");
  const double first_delta = cfg.delta_range->values().front();
  const Instance in = load_instance(cfg, N, first_delta);
  const Partition part = droplet_set(in.space, in.pot);
  const BoundaryQuantities q = boundary_quantities(in.space, in.edges, part, cfg.caps.max_dense);
  const Vector degree = weighted_degree(in.space, in.edges);

  out << "delta,window_lo,window_hi,certified_lo,certified_hi,min_eigenvalue_in_window\n";
  for (double delta : cfg.delta_range->values()) {
    out << format_double(delta);
    const SpinParams params(*cfg.M, delta);
    if (!params.droplet_valid()) {
      out << ",,,,,\n";
      continue;
    }
    const GapCertificate cert = certificate(part, q, params, N, cfg.bound,
                                            std::span<const double>(degree.data(), degree.size()), in.pot.values_x2);
    const bool window = cert.window_nonempty() && std::isfinite(cert.u2_eff);
    if (window) {
      out << ',' << format_double(cert.u1_eff) << ',' << format_double(cert.u2_eff);
    } else {
      out << ",,";
    }
    if (cert.interval) {
      out << ',' << format_double(cert.interval->first) << ',' << format_double(cert.interval->second);
    } else {
      out << ",,";
    }
    out << ',';
    if (window) {
      const SparseSymmetric H = hamiltonian_of(in, delta, cfg.caps);
      const int k0 = cfg.k_lowest > 0 ? cfg.k_lowest : static_cast<int>(part.v1.size()) + 1;
      const SpectrumResult s = spectrum_covering(H, cfg, k0, cert.u2_eff);
      for (double v : s.eigenvalues) {
        if (v > cert.u1_eff && v < cert.u2_eff) {
          out << format_double(v);
          break;
        }
      }
    }
    out << '\n';
  }
  return kOk;
}

int cmd_export(const RunConfig& cfg, std::ostream&) {
  const int N = single_n(cfg);
  const Instance in = load_instance(cfg, N, *cfg.delta);
  const SparseSymmetric H = hamiltonian_of(in, *cfg.delta, cfg.caps);
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw InvalidArgument("cannot open output file '" + cfg.out + "'");
  write_operator(file, in.space, H, "hamiltonian");
  if (!file) throw Error("write to '" + cfg.out + "' failed");
  return kOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    if (cfg.command == "equivalence") return cmd_equivalence(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "droplets") return cmd_droplets(cfg, out);
    if (cfg.command == "certify") return cmd_certify(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    if (cfg.command == "export") return cmd_export(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kValidationError;
  } catch (const DimensionCap& e) {
    err << "error: " << e.what() << "; raise --cap-configs / --cap-dense or pass --k-lowest\n";
    return kDimensionCap;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace xxzgap::cli
