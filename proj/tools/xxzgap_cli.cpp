// Copyright 2026 The xxzgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "xxzgap/cli/commands.hpp"
#include "xxzgap/cli/run_config.hpp"
#include "xxzgap/errors.hpp"

namespace {

constexpr const char* kFooter = R"(Graphs: cycle:n, path:n, strip:nxL, cylinder:nxL, file:PATH (edge list "u v" per line).

Outputs:
  spectrum   CSV, one eigenvalue per line, ascending, 17 significant digits.
             With --multiplets: value,multiplicity.
  sweep      CSV header delta,window_lo,window_hi,certified_lo,certified_hi,
             min_eigenvalue_in_window. Empty fields mean absent.
  equivalence, droplets, certify   JSON (schemas in docs/schemas).
  export     JSON header line + binary triplets written to --out.

Exit codes: 0 ok, 1 check failed, 2 invalid input, 3 dimension cap exceeded.)";

struct RawOptions {
  std::string graph;
  int M = 0;
  std::string N;
  double delta = 0.0;
  std::string delta_range;
  std::string mode = "generic";
  std::string bound = "potential";
};

void add_common(CLI::App* sub, xxzgap::cli::RunConfig& cfg, RawOptions& raw) {
  sub->add_option("--graph", raw.graph, "Base graph");
  sub->add_option("--M", raw.M, "Maximal local occupation 2J");
  sub->add_option("--N", raw.N, "Particle number, or lo:hi");
  sub->add_option("--delta", raw.delta, "Anisotropy");
  sub->add_option("--delta-range", raw.delta_range, "start:stop:step");
  sub->add_option("--k-lowest", cfg.k_lowest, "Iterative solver for the k lowest eigenvalues (0: dense)");
  sub->add_option("--cap-configs", cfg.caps.max_configs, "Configuration limit");
  sub->add_option("--cap-dense", cfg.caps.max_dense, "Dense eigensolver limit");
  sub->add_option("--mode", raw.mode, "generic | chain-droplet | strip-droplet");
  sub->add_option("--bound", raw.bound, "potential | degree");
  sub->add_option("--field-file", cfg.field_file, "Per-site field, 'site W' per line");
  sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
  sub->add_option("--seed", cfg.seed, "Seed for the iterative solver");
  sub->add_option("--threads", cfg.threads, "Worker threads");
  sub->add_flag("--multiplets", cfg.multiplets, "Group degenerate eigenvalues");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace xxzgap::cli;
  CLI::App app{"Droplet spectra and gap certificates for the ferromagnetic XXZ model"};
  app.footer(kFooter);
  app.require_subcommand(1);

  RunConfig cfg;
  RawOptions raw;
  for (const char* name : {"equivalence", "spectrum", "droplets", "certify", "sweep", "export"}) {
    add_common(app.add_subcommand(name), cfg, raw);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationError;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    cfg.graph = raw.graph;
    if (sub->count("--M")) cfg.M = raw.M;
    if (sub->count("--N")) cfg.N = parse_n_range(raw.N);
    if (sub->count("--delta")) cfg.delta = raw.delta;
    if (sub->count("--delta-range")) cfg.delta_range = parse_delta_range(raw.delta_range);
    cfg.mode = parse_mode(raw.mode);
    if (raw.bound == "potential") {
      cfg.bound = xxzgap::UpperBound::potential;
    } else if (raw.bound == "degree") {
      cfg.bound = xxzgap::UpperBound::degree;
    } else {
      throw xxzgap::InvalidArgument("unknown bound '" + raw.bound + "'");
    }
  } catch (const xxzgap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  }

  if (cfg.command == "export" || cfg.out.empty()) return run(cfg, std::cout, std::cerr);
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file '" << cfg.out << "'\n";
    return kValidationError;
  }
  return run(cfg, file, std::cerr);
}
